from utils import create_summary_report, format_progress


def test_format_progress():
    assert format_progress(1, 4, "quasiv") == "[1/4] (25.0%) quasiv"
    assert format_progress(0, 0) == "[0/0] (0.0%) "


def test_summary_report():
    report = create_summary_report("demo", 3, 1, {"modelos": "quasiv"})
    assert "=== REPORTE: demo ===" in report
    assert "Tasa de éxito: 75.0%" in report
    assert "  - modelos: quasiv" in report
