import streamlit as st
import pandas as pd
import plotly.express as px
import plotly.graph_objects as go

from weyl import all_elements, length, t_invariant


def weyl_statistics(n: int) -> pd.DataFrame:
    """Contagem de elementos de W_n por (comprimento, t(w))"""
    rows = [(length(w), t_invariant(w)) for w in all_elements(n)]
    df = pd.DataFrame(rows, columns=['length', 't'])
    return df.groupby(['length', 't']).size().reset_index(name='count')


def create_weyl_chart(stats: pd.DataFrame, n: int) -> go.Figure:
    """Barras empilhadas: número de elementos por comprimento, cor por t(w)"""
    fig = go.Figure()

    if stats.empty:
        fig.add_annotation(
            text="Nenhum elemento para exibir",
            xref="paper", yref="paper",
            x=0.5, y=0.5, xanchor='center', yanchor='middle',
            showarrow=False, font=dict(size=16)
        )
        return fig

    colors = px.colors.qualitative.Set2
    for t in sorted(stats['t'].unique()):
        subset = stats[stats['t'] == t]
        fig.add_trace(go.Bar(
            x=subset['length'],
            y=subset['count'],
            name=f"t = {t}",
            marker_color=colors[int(t) % len(colors)],
            hovertemplate="Comprimento: %{x}<br>Elementos: %{y}<extra></extra>",
        ))

    fig.update_layout(
        title=f"W_{n}: distribuição de comprimento e t(w)",
        xaxis_title="Comprimento",
        yaxis_title="Elementos",
        barmode='stack',
        height=420,
        template="plotly_white",
    )
    return fig


class WeylChartComponent:
    """Componente com a distribuição (comprimento, t) do grupo de Weyl"""

    MAX_RANK = 5

    def render(self):
        n = st.slider("Posto n", min_value=1, max_value=self.MAX_RANK, value=3, key="weyl_rank")
        stats = self._statistics(n)

        st.plotly_chart(create_weyl_chart(stats, n), use_container_width=True)

        col1, col2 = st.columns(2)
        with col1:
            st.metric("|W_n|", int(stats['count'].sum()))
        with col2:
            st.metric("Comprimento máximo", int(stats['length'].max()))

    @staticmethod
    @st.cache_data
    def _statistics(n: int) -> pd.DataFrame:
        return weyl_statistics(n)
