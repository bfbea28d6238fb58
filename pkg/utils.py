import io
import logging
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd
import streamlit as st

from correspondence import VerifyReport, central_sign_and_sides
from errors import ParameterError
from local_factors import PsiConductor, nu_char
from params import Parameter, component_data, flags

logger = logging.getLogger(__name__)

PARAMETER_COLUMNS = ['expression', 'rank', 'bounded', 'discrete', 'goodParity',
                     'centralizer', 'componentGroupRank', 'nu', 'zPhi']
REPORT_COLUMNS = ['expression', 'rank', 'nu', 'zPhi', 'chi', 'chiSO', 'centralSign',
                  'side', 'agreement', 'pathIndependent', 'stages']


def format_signs(signs: Any) -> str:
    """Vetor de sinais como '+,-'; '()' para o grupo trivial"""
    text = signs.render() if hasattr(signs, 'render') else ','.join('+' if s == 1 else '-' for s in signs)
    return text or '()'


def flag_labels(phi: Parameter) -> List[str]:
    f = flags(phi)
    labels = []
    if f.bounded:
        labels.append('bounded')
    if f.good_parity:
        labels.append('goodParity')
    if f.discrete:
        labels.append('discrete')
    return labels


def describe_parameter(phi: Parameter, psi: PsiConductor) -> Dict[str, Any]:
    """Linha descritiva de um parâmetro (ν em branco quando não avaliável)"""
    shape, group, z_phi = component_data(phi)
    f = flags(phi)
    try:
        nu = format_signs(nu_char(phi, psi))
    except ParameterError as e:
        logger.debug(f"ν indisponível para {phi.render()}: {e}")
        nu = ''
    return {
        'expression': phi.render(),
        'rank': phi.rank,
        'bounded': f.bounded,
        'discrete': f.discrete,
        'goodParity': f.good_parity,
        'centralizer': shape.render(),
        'componentGroupRank': group.rank,
        'nu': nu,
        'zPhi': format_signs(z_phi),
    }


def parameters_to_dataframe(params: Iterable[Parameter], psi: PsiConductor) -> pd.DataFrame:
    """Tabela de parâmetros enumerados"""
    rows = [describe_parameter(phi, psi) for phi in params]
    return pd.DataFrame(rows, columns=PARAMETER_COLUMNS)


def reports_to_dataframe(reports: Iterable[VerifyReport], psi: PsiConductor) -> pd.DataFrame:
    """Tabela de relatórios do verificador, uma linha por parâmetro realçado"""
    rows = []
    for report in reports:
        phi, chi = report.enhanced.param, report.enhanced.chi
        _, _, z_phi = component_data(phi)
        record = central_sign_and_sides(phi, chi, psi)
        rows.append({
            'expression': phi.render(),
            'rank': phi.rank,
            'nu': format_signs(nu_char(phi, psi)),
            'zPhi': format_signs(z_phi),
            'chi': format_signs(chi),
            'chiSO': format_signs(report.derived),
            'centralSign': record.central_sign,
            'side': report.side.value,
            'agreement': report.agreement,
            'pathIndependent': report.path_independent,
            'stages': '>'.join(report.stages),
        })
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def export_dataframe_to_csv(df: pd.DataFrame) -> str:
    """Exportar DataFrame para string CSV"""
    if df.empty:
        return ""

    output = io.StringIO()
    df.to_csv(output, index=False, encoding='utf-8')
    return output.getvalue()


def export_dataframe_to_excel(df: pd.DataFrame, sheet_name: str = 'Parametros') -> bytes:
    """Exportar DataFrame para bytes Excel"""
    if df.empty:
        return b""

    output = io.BytesIO()
    with pd.ExcelWriter(output, engine='openpyxl') as writer:
        df.to_excel(writer, index=False, sheet_name=sheet_name)
    return output.getvalue()


def write_export(df: pd.DataFrame, csv_path: Optional[str] = None, xlsx_path: Optional[str] = None) -> List[str]:
    """Grava as exportações pedidas e devolve os caminhos escritos"""
    written = []
    if csv_path:
        with open(csv_path, 'w', encoding='utf-8', newline='') as fh:
            fh.write(export_dataframe_to_csv(df))
        written.append(csv_path)
    if xlsx_path:
        with open(xlsx_path, 'wb') as fh:
            fh.write(export_dataframe_to_excel(df))
        written.append(xlsx_path)
    for path in written:
        logger.info(f"{len(df)} linhas exportadas para {path}")
    return written


def create_export_button(data: Any, filename: str, file_type: str = 'csv') -> bool:
    """Criar botão de exportação com funcionalidade de download"""
    if file_type == 'csv' and isinstance(data, pd.DataFrame):
        csv_data = export_dataframe_to_csv(data)
        if csv_data:
            st.download_button(
                label=f"📥 Exportar {filename}.csv",
                data=csv_data,
                file_name=f"{filename}.csv",
                mime="text/csv"
            )
            return True

    elif file_type == 'excel' and isinstance(data, pd.DataFrame):
        excel_data = export_dataframe_to_excel(data)
        if excel_data:
            st.download_button(
                label=f"📥 Exportar {filename}.xlsx",
                data=excel_data,
                file_name=f"{filename}.xlsx",
                mime="application/vnd.openxmlformats-officedocument.spreadsheetml.sheet"
            )
            return True

    return False
