import logging

import streamlit as st

from components.packet_table import PacketTableComponent
from components.weyl_chart import WeylChartComponent
from config import configure_logging, get_config
from correspondence import PipelineService, Side
from errors import ParameterError
from expr_parser import parse_param
from local_factors import L_and_gamma, PsiConductor
from params import enhance, parse_signs
from utils import describe_parameter, flag_labels

configure_logging()
logger = logging.getLogger(__name__)

# Configuração da página
st.set_page_config(
    page_title="Explorador de parâmetros Mp(2n) / SO(2n+1)",
    page_icon="🧮",
    layout="wide",
    initial_sidebar_state="expanded"
)

EXAMPLE_EXPRESSION = "[1 x S(2)] + [sgn x S(2)]"


@st.cache_resource
def init_service(e2: int, d: int) -> PipelineService:
    return PipelineService(PsiConductor(d=d, e2=e2))


def load_css():
    st.markdown("""
    <style>
    .main-header {
        background: linear-gradient(90deg, #dfe9f3, #ffffff, #dfe9f3);
        padding: 16px;
        border-radius: 12px;
        margin-bottom: 24px;
        text-align: center;
    }
    .mono { font-family: monospace; }
    </style>
    """, unsafe_allow_html=True)


def render_sidebar():
    """Expressão, sinais de χ e ψ; devolve (texto, sinais, e2, d)"""
    config = get_config()
    with st.sidebar:
        st.markdown("### 🧮 Parâmetro")
        text = st.text_input("Expressão", value=st.session_state.get('expression', EXAMPLE_EXPRESSION))
        signs = st.text_input("χ (sinais em I⁺)", value="", help="ex.: +,-")
        st.markdown("### ψ")
        e2 = st.number_input("e2", min_value=0, value=config.psi.e2, step=1)
        d = st.number_input("d(ψ)", min_value=0, value=config.psi.d if e2 == config.psi.e2 else 2 * e2, step=1)
        st.caption("Explorador somente leitura; nada é gravado.")
    st.session_state.expression = text
    return text, signs, int(e2), int(d)


def render_analysis(phi, psi):
    row = describe_parameter(phi, psi)
    col1, col2, col3, col4 = st.columns(4)
    with col1:
        st.metric("Posto", row['rank'])
    with col2:
        st.metric("|I⁺|", row['componentGroupRank'])
    with col3:
        st.metric("ν_φ", row['nu'] or "n/a")
    with col4:
        st.metric("z_φ", row['zPhi'])

    st.markdown(f"**Centralizador:** `{row['centralizer']}`")
    st.markdown(f"**Propriedades:** {', '.join(flag_labels(phi)) or 'nenhuma'}")
    try:
        L, gamma = L_and_gamma(phi, psi)
        st.markdown(f"**L(s, φ):** `{L.render()}`")
        st.markdown(f"**γ(1/2, φ, ψ):** `{gamma.render()}`")
    except ParameterError as e:
        st.warning(f"Fatores locais indisponíveis: {e}")


def render_verification(service, phi, signs_text):
    if not signs_text.strip():
        st.info("Informe os sinais de χ na barra lateral para verificar.")
        return
    try:
        ep = enhance(phi, parse_signs(signs_text))
        side = service.block_membership(phi, ep.chi)
        if side is Side.OUTSIDE:
            st.warning("Parâmetro realçado fora dos blocos de Iwahori.")
            return
        report = service.verify_pipeline(phi, ep.chi)
    except ParameterError as e:
        logger.warning(f"verificação falhou para {phi.render()}: {e}")
        st.error(f"Verificação falhou: {e}")
        return

    if report.agreement:
        st.success(f"χ° derivado = χ·ν_φ = {report.closed_form.render() or '()'} ({side.value})")
    else:
        st.error(f"Divergência: derivado {report.derived.render()} ≠ {report.closed_form.render()}")
    st.markdown(f"**Estágios:** {' → '.join(report.stages)}")
    st.json(report.to_dict()['tree'], expanded=False)


def main():
    load_css()
    st.markdown('<div class="main-header"><h2>Parâmetros realçados de Mp(2n) e SO(2n+1)</h2></div>',
                unsafe_allow_html=True)

    text, signs_text, e2, d = render_sidebar()
    service = init_service(e2, d)

    try:
        phi = parse_param(text)
    except ParameterError as e:
        st.error(f"Expressão inválida: {e}")
        return

    tab1, tab2, tab3, tab4 = st.tabs(["📋 Análise", "📦 Pacote", "✅ Verificação", "📈 Weyl"])
    with tab1:
        render_analysis(phi, service.psi)
    with tab2:
        PacketTableComponent(service).render(phi)
    with tab3:
        render_verification(service, phi, signs_text)
    with tab4:
        WeylChartComponent().render()


if __name__ == "__main__":
    main()
