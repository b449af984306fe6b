import streamlit as st
import streamlit.components.v1 as components

from modules import calculations, constructions
from modules.config import Config
from modules.errors import CantorBoundsError
from modules.styling import configure_page_style, display_aggrid_table, display_bound_metrics, style_dataframe
from modules.svg_render import CANVAS, LEGEND_HEIGHT, MARGIN, render_svg

# --- PAGE CONFIGURATION ---
st.set_page_config(
    page_title="Cantor Dust Bounds",
    page_icon="🔳",
    layout="wide"
)

# --- APPLY CUSTOM STYLES ---
configure_page_style()

# --- HEADER ---
st.markdown("""
    <h1 style='
        color: #00816D;
        font-size: 2.5rem;
        font-weight: 700;
        text-align: left;
         '>
        🔳 Hausdorff Measure Bounds for C × C
    </h1>
""", unsafe_allow_html=True)
st.caption(f"Engine {Config.ENGINE_VERSION} · exponent s = log₃4 · bounds rounded up at {Config.PUBLISHED_PLACES} places")


# --- DATA (with caching) ---
@st.cache_data
def load_fixture_report():
    return calculations.fixture_report()


@st.cache_data
def load_series_report():
    return calculations.series_report()


@st.cache_data(show_spinner="Counting certified coverage...")
def load_coverage_table():
    specs = [constructions.build(name) for name in constructions.catalog()]
    return calculations.coverage_table(specs)


@st.cache_data(show_spinner="Counting at the quoted levels...")
def load_narrative_table():
    return calculations.narrative_table()


@st.cache_data
def load_figure(name: str, level: int) -> str:
    return render_svg(constructions.build(name), level)


try:
    report = load_fixture_report()
except CantorBoundsError as exc:
    st.error(f"Could not reproduce the printed bounds: {exc}")
    st.stop()

# --- KEY METRICS ---
display_bound_metrics(calculations.summary_metrics(report))

# --- FIXTURE REPRODUCTION ---
st.markdown("### 📋 Printed bounds reproduced")
st.write(style_dataframe(report).to_html(), unsafe_allow_html=True)
if not report["pass"].all():
    st.warning("Some printed bounds are not reproduced within tolerance.")

with st.expander("Octagon series, k = 2..5"):
    st.write(style_dataframe(load_series_report()).to_html(), unsafe_allow_html=True)

# --- CERTIFIED COVERAGE ---
st.markdown("### ✅ Certified coverage at the recommended levels")
try:
    display_aggrid_table(load_coverage_table())
except CantorBoundsError as exc:
    st.error(f"Certified counting failed: {exc}")

with st.expander("Quoted uncovered counts against certified ones"):
    try:
        display_aggrid_table(load_narrative_table())
    except CantorBoundsError as exc:
        st.error(f"Certified counting failed: {exc}")

# --- FIGURE ---
st.markdown("### 🖼️ Figure")
col1, col2 = st.columns([1, 1])
with col1:
    selected_name = st.selectbox("Construction", options=list(constructions.catalog()), index=4)
with col2:
    selected_level = st.slider("Level", min_value=1, max_value=7, value=5)

try:
    svg = load_figure(selected_name, selected_level)
    components.html(
        f"<div class='figure-wrapper'>{svg.split('?>', 1)[-1]}</div>",
        height=CANVAS + 2 * MARGIN + LEGEND_HEIGHT + 20,
    )
except CantorBoundsError as exc:
    st.error(f"Could not render {selected_name}: {exc}")
