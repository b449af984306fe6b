import streamlit as st
import pandas as pd
from st_aggrid import AgGrid, GridOptionsBuilder, JsCode

PRIMARY_TEAL = "#00816D"
ACCENT_GREEN = "#10b981"
ACCENT_AMBER = "#f59e0b"
SECONDARY_RED = "#e11d48"


def configure_page_style():
    """
    Applies the report view's CSS: Manrope font, light background, teal headers.
    """
    page_style = f"""
    <style>
    @import url('https://fonts.googleapis.com/css2?family=Manrope:wght@400;500;700&display=swap');

    :root {{
        --primary-teal: {PRIMARY_TEAL};
        --secondary-red: {SECONDARY_RED};
        --accent-green: {ACCENT_GREEN};
        --bg-light: #f8fafc;
        --bg-white: #ffffff;
    }}

    html, body {{
        font-family: 'Manrope', sans-serif;
    }}

    .stApp {{
        background-color: var(--bg-light);
    }}

    .block-container {{
        background-color: var(--bg-white);
        padding: 2rem 3rem;
        border-radius: 0.75rem;
        margin: 1rem;
        box-shadow: 0 1px 3px 0 rgb(0 0 0 / 0.1);
    }}

    h1, h2, h3 {{
        color: var(--primary-teal);
        font-weight: 700;
    }}

    .figure-wrapper {{
        background-color: var(--bg-white);
        padding: 1rem;
        border-radius: 0.75rem;
        border: 1px solid #e2e8f0;
    }}
    </style>
    """
    st.markdown(page_style, unsafe_allow_html=True)


def display_bound_metrics(metrics: dict):
    """Four headline cards above the reproduction table."""
    if not metrics:
        st.info("No fixture rows to summarise.")
        return

    all_passed = metrics["passed"] == metrics["total"]
    cards = [
        ("Fixtures reproduced", f"{metrics['passed']} / {metrics['total']}", ACCENT_GREEN if all_passed else SECONDARY_RED),
        ("Best printed bound", metrics["best_bound"], PRIMARY_TEAL),
        ("Best construction", metrics["best_name"], PRIMARY_TEAL),
        ("Largest |difference|", metrics["max_diff"], ACCENT_AMBER),
    ]
    css_style = """
    <style>
        .metric-container {
            display: grid;
            grid-template-columns: repeat(4, 1fr);
            gap: 15px;
            margin-bottom: 30px;
        }
        .metric-card {
            background-color: #FFFFFF;
            border-radius: 8px;
            padding: 10px;
            text-align: center;
            height: 90px;
            box-shadow: 0 2px 4px rgba(0,0,0,0.05);
            border-top: 4px solid;
        }
        .metric-card .label { font-size: 12px; color: #64748b; }
        .metric-card .value { font-size: 20px; font-weight: 700; margin-top: 8px; }
    </style>
    """
    html_content = '<div class="metric-container">'
    for label, value, color in cards:
        html_content += (
            f'<div class="metric-card" style="border-top-color: {color};">'
            f'<div class="label">{label}</div><div class="value">{value}</div></div>'
        )
    html_content += "</div>"
    st.markdown(css_style + html_content, unsafe_allow_html=True)


def style_dataframe(df: pd.DataFrame):
    """Pandas Styler for result tables: pass/fail cells coloured, exact text left-aligned."""

    def style_pass_cell(val):
        if pd.isna(val):
            return "font-weight: 300;"
        color = ACCENT_GREEN if bool(val) else SECONDARY_RED
        return f"background-color: {color}33; font-weight: 600;"

    styler = df.style
    apply_cells = getattr(styler, "map", None) or styler.applymap
    if "pass" in df.columns:
        styler = apply_cells(style_pass_cell, subset=["pass"])

    text_columns = ["name", "fraction", "diameter", "provenance", "quantity"]
    table_styles = [
        {
            "selector": "",
            "props": [("font-family", "Manrope, sans-serif"), ("color", "#000000"), ("font-size", "12px")],
        },
        {
            "selector": "td",
            "props": [("padding", "8px"), ("border-bottom", "1px solid #f0f0f0"), ("text-align", "right")],
        },
        {
            "selector": "th",
            "props": [
                ("position", "sticky"),
                ("top", "0"),
                ("z-index", "1"),
                ("font-weight", "600"),
                ("padding", "10px"),
                ("background-color", PRIMARY_TEAL),
                ("color", "#f5f5f5"),
                ("text-align", "center"),
            ],
        },
        {"selector": "tr:hover", "props": [("background-color", "#f5f5f5")]},
    ]
    for i, col_name in enumerate(df.columns):
        if col_name in text_columns:
            table_styles.append({"selector": f"td:nth-child({i + 1})", "props": [("text-align", "left")]})

    styler = styler.set_table_styles(table_styles)
    styler = styler.set_table_attributes('style="width:100%; background-color:white; border-collapse: collapse;"')
    return styler.hide(axis="index")


def display_aggrid_table(df: pd.DataFrame, height: int = 260):
    """
    AG-Grid view of the certified coverage table, tallies right-aligned and
    the three tally columns tinted with the figure palette.
    """
    if df.empty:
        st.warning("No data to display")
        return

    tally_colors = {"inside": ACCENT_GREEN, "straddle": ACCENT_AMBER, "outside": SECONDARY_RED}

    gb = GridOptionsBuilder.from_dataframe(df)
    gb.configure_default_column(resizable=True, filter=True, sortable=True, width=120, minWidth=90)
    for col, color in tally_colors.items():
        if col in df.columns:
            tint = JsCode(
                "function(params) { return params.value > 0 ? "
                f"{{'color': 'black', 'backgroundColor': '{color}33'}} : "
                "{'color': 'black', 'backgroundColor': '#ffffff'}; }"
            )
            gb.configure_column(col, cellStyle=tint, type=["numericColumn", "rightAligned"])
    gb.configure_column("name", headerName="Construction", pinned="left")
    gb.configure_pagination(enabled=False)
    gb.configure_grid_options(domLayout="normal", rowHeight=32, headerHeight=40)

    return AgGrid(
        df,
        gridOptions=gb.build(),
        allow_unsafe_jscode=True,
        fit_columns_on_grid_load=True,
        height=height,
        theme="streamlit",
        update_mode="NO_UPDATE",
    )
