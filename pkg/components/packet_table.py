import streamlit as st
import pandas as pd

from errors import ParameterError
from utils import create_export_button


class PacketTableComponent:
    """Componente para exibir o pacote de um parâmetro: χ, χ°, sinal central e bloco"""

    def __init__(self, service):
        self.service = service

    def render(self, phi):
        """Renderizar a tabela do pacote"""

        try:
            packet = self.service.packet_table(phi)
        except ParameterError as e:
            st.error(f"Pacote indisponível: {e}")
            return

        if packet.empty:
            st.info("Pacote vazio.")
            return

        st.subheader(f"Pacote de {phi.render()}")

        # Filtro por lado do bloco de Iwahori
        sides = sorted(packet['side'].unique())
        selected = st.multiselect("Filtrar blocos:", sides, default=sides, key="packet_side_filter")
        filtered = packet[packet['side'].isin(selected)]

        st.dataframe(
            filtered.style.apply(self._highlight_sides, axis=1),
            use_container_width=True,
            hide_index=True,
        )

        self._render_summary(packet)
        create_export_button(filtered, "pacote", 'csv')

    def _highlight_sides(self, row):
        """Destacar membros fora dos blocos de Iwahori"""
        color = 'background-color: #f8d7da' if row['side'] == 'Outside' else ''
        return [color] * len(row)

    def _render_summary(self, packet: pd.DataFrame):
        col1, col2, col3 = st.columns(3)
        with col1:
            st.metric("Membros", len(packet))
        with col2:
            st.metric("Forma V+", int((packet['soForm'] == 'V+').sum()))
        with col3:
            st.metric("Forma V-", int((packet['soForm'] == 'V-').sum()))
