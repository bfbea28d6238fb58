"""
Linha de comando `mpso`: análise, transferência, verificação, fatores locais,
endoscopia, descida, grupo de Weyl e enumeração

Saída JSON determinística (chaves ordenadas) no stdout; diagnósticos no stderr.
Códigos de saída: 0 sucesso, 1 erro de domínio, 2 erro de uso.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config import configure_logging
from correspondence import (
    PHASE_ROTATIONS,
    Direction,
    PipelineService,
    central_sign_and_sides,
    enumerate_enhanced,
    enumerate_parameters,
    tw_transfer,
)
from endoscopy import factorize, involutions, make_signature, t_phi_s
from errors import ParameterError
from expr_parser import parse_block, parse_param
from jacquet_descent import component_descent, descend_param, jacquet_enhanced, valid_choices
from levi_reduction import LeviShape, discrete_support, good_parity_split, tempered_support
from local_factors import (
    PsiConductor,
    L_and_gamma,
    eps_half,
    eps_half_block,
    eps_minus_part,
    gamma_half_block,
    l_factor,
    nu_char,
    right_half_plane_poles,
)
from params import SimpleBlock, component_data, enhance, flags, parse_signs
from utils import describe_parameter, flag_labels, format_signs, parameters_to_dataframe, reports_to_dataframe, write_export
from weyl import TMode, comparison_scalar, evaluate_and_reduce, length, min_coset_rep, reduced_word, t_invariant

logger = logging.getLogger(__name__)

PROG = 'mpso'


# ===== TIPOS DE ARGUMENTO =====

def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"inteiro esperado: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"deve ser >= 0: {value}")
    return value


def _int_list(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f"lista de inteiros esperada: {text!r}")


def _phase_list(text: str) -> Tuple[str, ...]:
    phases = tuple(p.strip() for p in text.split(',') if p.strip())
    unknown = [p for p in phases if p not in PHASE_ROTATIONS]
    if unknown or not phases:
        raise argparse.ArgumentTypeError(f"fases válidas: {', '.join(PHASE_ROTATIONS)}")
    return phases


def _levi(text: str) -> LeviShape:
    """'sp;g1,g2' → LeviShape(sp, (g1, g2))"""
    sp, _, gl = text.partition(';')
    try:
        return LeviShape(int(sp), _int_list(gl))
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"Levi deve ser 'sp;g1,g2': {text!r}")


# ===== PARSER =====

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--e2', type=_nonnegative_int, default=None, help='valuação de 2 no corpo (padrão 0)')
    common.add_argument('--d-psi', dest='d_psi', type=_nonnegative_int, default=None,
                        help='expoente de condutor de ψ (padrão 2·e2)')
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument('--json', dest='output', action='store_const', const='json', default='json')
    fmt.add_argument('--text', dest='output', action='store_const', const='text')
    common.add_argument('-v', '--verbose', action='store_true', help='logs em nível DEBUG')

    parser = argparse.ArgumentParser(prog=PROG, description='parâmetros de Langlands realçados de Mp(2n) e SO(2n+1)')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('analyze', parents=[common], help='blocos, classificação, 𝒮_φ, ν_φ e z_φ')
    p.add_argument('expr')
    p.add_argument('--support', action='store_true', help='suportes temperado, de paridade boa e discreto')
    p.add_argument('--packet', action='store_true', help='tabela do pacote completo')

    p = sub.add_parser('transfer', parents=[common], help='χ ↦ χ·ν_φ')
    p.add_argument('expr')
    p.add_argument('--chi', required=True, help="sinais na ordem canônica de I⁺, ex. '+,-'")
    p.add_argument('--direction', choices=[d.value for d in Direction], default=Direction.MP_TO_SO.value)

    p = sub.add_parser('verify', parents=[common], help='verificador recursivo do pipeline')
    p.add_argument('expr', nargs='?')
    p.add_argument('--chi')
    p.add_argument('--rank', type=_nonnegative_int)
    p.add_argument('--exhaustive', action='store_true')
    p.add_argument('--csv')
    p.add_argument('--xlsx')

    p = sub.add_parser('factors', parents=[common], help='L(s, φ), ε(1/2), γ(1/2)')
    p.add_argument('expr')
    p.add_argument('--s', type=_int_list, help='assinatura de involução k1,k2,...')

    p = sub.add_parser('endoscopy', parents=[common], help='fatorações endoscópicas por involução')
    p.add_argument('expr')
    p.add_argument('--s', type=_int_list)

    p = sub.add_parser('descend', parents=[common], help='descida de Jacquet em um bloco')
    p.add_argument('expr')
    p.add_argument('--block', required=True, help="'char,a', ex. '1,2'")
    p.add_argument('--chi')

    p = sub.add_parser('weyl', parents=[common], help='palavras em W_n, t(w) e escalares de comparação')
    p.add_argument('--n', type=_nonnegative_int, required=True)
    p.add_argument('--word', type=_int_list, default=())
    p.add_argument('--side', choices=['+', '-'])
    p.add_argument('--levi', type=_levi, help="Levi 'sp;g1,g2' para o representante mínimo")

    p = sub.add_parser('enumerate', parents=[common], help='parâmetros trivialmente ramificados de posto n')
    p.add_argument('--rank', type=_nonnegative_int, required=True)
    p.add_argument('--discrete', action='store_true')
    p.add_argument('--bounded', action='store_true')
    p.add_argument('--phases', type=_phase_list, default=('1', '-1'))
    p.add_argument('--csv')
    p.add_argument('--xlsx')
    return parser


# ===== COMANDOS =====

def _psi(args) -> PsiConductor:
    return PsiConductor.default(e2=args.e2, d=args.d_psi)


def _block_type(phi, i: int) -> str:
    if i in phi.i_plus:
        return 'I+'
    if i in phi.i_minus:
        return 'I-'
    return 'J'


def analyze_report(phi, psi: PsiConductor) -> Dict[str, Any]:
    shape, group, z_phi = component_data(phi)
    row = describe_parameter(phi, psi)
    try:
        eps = eps_half(phi, psi).render()
    except ParameterError:
        eps = None
    return {
        'expression': phi.render(),
        'rank': phi.rank,
        'blocks': [
            {'block': b.render(), 'char': b.rho.render(), 'a': b.a, 'mult': m, 'dim': b.dim,
             'type': _block_type(phi, i)}
            for i, (b, m) in enumerate(phi.blocks)
        ],
        'classification': {
            'iPlus': [phi.block(i).render() for i in phi.i_plus],
            'iMinus': [phi.block(i).render() for i in phi.i_minus],
            'j': [[phi.block(i).render(), phi.block(j).render()] for i, j in phi.j_pairs],
        },
        'centralizer': shape.render(),
        'componentGroupRank': group.rank,
        'nu': row['nu'] or None,
        'zPhi': format_signs(z_phi),
        'epsHalf': eps,
        'flags': flag_labels(phi),
    }


def _support_payload(phi) -> Dict[str, Any]:
    tempered = tempered_support(phi)
    out: Dict[str, Any] = {
        'tempered': {
            'phi0': tempered.phi0.render(),
            'levi': tempered.shape.render(),
            'glParts': [{'blocks': part.render(), 'exponent': str(part.exponent)} for part in tempered.gl_parts],
        },
    }
    if flags(phi).bounded:
        phi_gp, ngp = good_parity_split(phi)
        out['goodParity'] = {'phiGp': phi_gp.render(), 'phiNgp': ngp.render()}
        support = discrete_support(phi)
        out['discrete'] = {
            'phi0': support.phi0.render(),
            'levi': support.shape.render(),
            'tower': [f.render() for f in support.tower.factors],
            'weylOrder': support.tower.weyl_order,
            'normalizerOrder': support.tower.normalizer_order,
            'pSurjective': support.tower.is_p_surjective(),
        }
    return out


def cmd_analyze(args) -> Dict[str, Any]:
    psi = _psi(args)
    phi = parse_param(args.expr)
    report = analyze_report(phi, psi)
    if args.support:
        report['support'] = _support_payload(phi)
    if args.packet:
        report['packet'] = PipelineService(psi).packet_table(phi).to_dict('records')
    return report


def cmd_transfer(args) -> Dict[str, Any]:
    psi = _psi(args)
    phi = parse_param(args.expr)
    ep = enhance(phi, parse_signs(args.chi))
    out = tw_transfer(phi, ep.chi, psi, Direction(args.direction))
    record = central_sign_and_sides(phi, ep.chi, psi)
    return {
        'expression': phi.render(),
        'direction': args.direction,
        'chi': format_signs(ep.chi),
        'nu': format_signs(nu_char(phi, psi)),
        'chiOut': format_signs(out.chi),
        'centralSign': record.central_sign,
        'soSide': record.so_side,
    }


def cmd_verify(args, parser: argparse.ArgumentParser) -> Dict[str, Any]:
    psi = _psi(args)
    service = PipelineService(psi)
    if args.exhaustive:
        if args.rank is None:
            parser.error('verify --exhaustive exige --rank')
        reports = service.verify_many(enumerate_enhanced(args.rank, bounded_only=True))
        write_export(reports_to_dataframe(reports, psi), args.csv, args.xlsx)
        return {
            'rank': args.rank,
            'checked': len(reports),
            'allAgree': all(r.agreement for r in reports),
            'allPathIndependent': all(r.path_independent for r in reports),
            'reports': [
                {'param': r.enhanced.param.render(), 'chi': format_signs(r.enhanced.chi),
                 'chiSO': format_signs(r.derived), 'agreement': r.agreement, 'stages': r.stages}
                for r in reports
            ],
        }
    if args.expr is None or args.chi is None:
        parser.error('verify exige EXPR --chi ou --rank N --exhaustive')
    phi = parse_param(args.expr)
    ep = enhance(phi, parse_signs(args.chi))
    return service.verify_pipeline(phi, ep.chi).to_dict()


def cmd_factors(args) -> Dict[str, Any]:
    psi = _psi(args)
    phi = parse_param(args.expr)
    out: Dict[str, Any] = {
        'expression': phi.render(),
        'L': l_factor(phi).render(),
        'poles': [c.render() for c in right_half_plane_poles(phi)],
        'epsHalf': eps_half(phi, psi).render(),
    }
    try:
        _, gamma = L_and_gamma(phi, psi)
        out['gammaHalf'] = gamma.render()
    except ParameterError as e:
        out['gammaHalf'] = None
        out['gammaError'] = e.code
    per_block = []
    for b, m in phi.blocks:
        entry = {'block': b.render(), 'mult': m, 'epsHalf': eps_half_block(b, psi).render()}
        try:
            entry['gammaHalf'] = gamma_half_block(b, psi).render()
        except ParameterError as e:
            entry['gammaHalf'] = None
            entry['gammaError'] = e.code
        per_block.append(entry)
    out['blocks'] = per_block
    if args.s is not None:
        s = make_signature(phi, args.s)
        out['s'] = s.render()
        out['epsMinus'] = eps_minus_part(phi, s, psi).render()
    return out


def _endoscopy_row(phi, s, psi: PsiConductor) -> Dict[str, Any]:
    datum, phi_prime, phi_double_prime = factorize(phi, s)
    symbol, sign = t_phi_s(phi, s, psi).single_term()
    return {
        's': s.render(),
        'image': format_signs(s.image),
        'datum': datum.render(),
        'phiPrime': phi_prime.render(),
        'phiDoublePrime': phi_double_prime.render(),
        'sign': int(sign),
        'transfer': symbol.render(),
    }


def cmd_endoscopy(args) -> Dict[str, Any]:
    psi = _psi(args)
    phi = parse_param(args.expr)
    signatures = [make_signature(phi, args.s)] if args.s is not None else involutions(phi)
    return {
        'expression': phi.render(),
        'centralizer': component_data(phi)[0].render(),
        'involutions': [_endoscopy_row(phi, s, psi) for s in signatures],
    }


def cmd_descend(args) -> Dict[str, Any]:
    psi = _psi(args)
    phi = parse_param(args.expr)
    rho, a = parse_block(args.block)
    block = SimpleBlock(rho, a)
    phi_minus, case = descend_param(phi, block)
    descent, kernel = component_descent(phi, block)
    out: Dict[str, Any] = {
        'expression': phi.render(),
        'block': block.render(),
        'case': case.render(),
        'kernel': kernel.render(),
        'kernelOrder': kernel.order,
        'phiMinus': phi_minus.render(),
        'orders': [descent.source.order, kernel.order, descent.target.order],
    }
    if args.chi is not None:
        ep = enhance(phi, parse_signs(args.chi))
        out['chi'] = format_signs(ep.chi)
        out['validChoices'] = [c.block.render() for c in valid_choices(phi, ep.chi, psi)]
        lowered = jacquet_enhanced(phi, ep.chi, block, psi)
        out['chiMinus'] = format_signs(lowered.chi)
    return out


def cmd_weyl(args) -> Dict[str, Any]:
    psi = _psi(args)
    w, reduced, ell = evaluate_and_reduce(args.word, args.n)
    sides = [args.side] if args.side else ['+', '-']
    comparison = {}
    for side in sides:
        c = comparison_scalar(w, side, psi.e2)
        comparison[side] = {'scalar': c.value.render(), 'gammaExponent': c.gamma_exponent}
    out: Dict[str, Any] = {
        'n': args.n,
        'word': list(args.word),
        'element': w.render(),
        'reducedWord': list(reduced),
        'length': ell,
        't': t_invariant(w),
        'tModes': {mode.value: t_invariant(w, mode) for mode in TMode},
        'comparison': comparison,
    }
    if args.levi is not None:
        rep = min_coset_rep(w, args.levi)
        out['levi'] = args.levi.render()
        out['minCosetRep'] = {'element': rep.render(), 'reducedWord': list(reduced_word(rep)),
                              'length': length(rep)}
    return out


def cmd_enumerate(args) -> Dict[str, Any]:
    psi = _psi(args)
    params = enumerate_parameters(args.rank, discrete_only=args.discrete, bounded_only=args.bounded,
                                  phases=args.phases)
    df = parameters_to_dataframe(params, psi)
    write_export(df, args.csv, args.xlsx)
    return {
        'rank': args.rank,
        'phases': list(args.phases),
        'discrete': args.discrete,
        'count': len(params),
        'parameters': df.to_dict('records'),
    }


COMMANDS = {
    'analyze': cmd_analyze,
    'transfer': cmd_transfer,
    'factors': cmd_factors,
    'endoscopy': cmd_endoscopy,
    'descend': cmd_descend,
    'weyl': cmd_weyl,
    'enumerate': cmd_enumerate,
}


# ===== SAÍDA =====

def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def to_text(payload: Any, indent: int = 0) -> str:
    pad = '  ' * indent
    lines: List[str] = []
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(to_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(value)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(to_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(f"{pad}{_scalar_text(payload)}")
    return '\n'.join(lines)


def _scalar_text(value: Any) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, dict)):
        return '[]' if isinstance(value, list) else '{}'
    return str(value)


SIGN_OPTIONS = ('--chi',)


def _looks_like_signs(text: str) -> bool:
    return text.startswith('-') and set(text) <= set('+-1, ')


def _attach_sign_values(argv: Sequence[str]) -> List[str]:
    """['--chi', '-,+'] → ['--chi=-,+']: argparse leria '-,+' como opção"""
    out: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in SIGN_OPTIONS and i + 1 < len(argv) and _looks_like_signs(argv[i + 1]):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, str]:
    """Executa um comando e devolve (código de saída, texto do stdout)"""
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_sign_values(sys.argv[1:] if argv is None else argv))
        configure_logging(verbose=args.verbose)
        if args.command == 'verify':
            payload = cmd_verify(args, parser)
        else:
            payload = COMMANDS[args.command](args)
    except SystemExit as exit_:
        code = exit_.code if isinstance(exit_.code, int) else 2
        return code, ''
    except ParameterError as e:
        logger.debug(f"erro de domínio em {args.command}: {e}")
        print(f"{PROG}: {e}", file=sys.stderr)
        return 1, ''
    output = to_text(payload) if args.output == 'text' else to_json(payload)
    return 0, output


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, output = run(argv)
    if output:
        print(output)
    return code


if __name__ == '__main__':
    sys.exit(main())
