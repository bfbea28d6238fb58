"""
Testes da correspondência χ° = χ·ν_φ, dos blocos de Iwahori e do verificador do pipeline
"""

from fractions import Fraction
from unittest.mock import patch

import pytest

from config import reset_config
from correspondence import (
    Direction,
    Side,
    base_table,
    central_sign_and_sides,
    enumerate_enhanced,
    enumerate_parameters,
    tw_transfer,
)
from errors import NotEvaluable, OutsideBlock, ParameterError, RankBound
from params import (
    SGN,
    TRIVIAL,
    AbstractLabel,
    SelfDualType,
    SimpleBlock,
    component_group,
    enhance,
    flags,
    normalize,
    unr,
)


@pytest.fixture
def phi_one():
    """[1 x S(2)]"""
    return normalize([(TRIVIAL, 2, 1)])


class TestTransfer:
    """tw_transfer e sinais centrais"""

    def test_transfer_multiplies_by_nu(self, psi, phi_pair):
        ep = enhance(phi_pair, (1, 1))
        assert tw_transfer(phi_pair, ep.chi, psi).chi.render() == '-,+'

    def test_both_directions_agree(self, psi, phi_pair):
        chi = enhance(phi_pair, (1, -1)).chi
        forward = tw_transfer(phi_pair, chi, psi, Direction.MP_TO_SO)
        backward = tw_transfer(phi_pair, chi, psi, Direction.SO_TO_MP)
        assert forward == backward

    def test_involution_and_side_coherence(self, psi):
        for n in range(1, 5):
            for ep in enumerate_enhanced(n):
                once = tw_transfer(ep.param, ep.chi, psi)
                assert tw_transfer(ep.param, once.chi, psi, Direction.SO_TO_MP) == ep
                record = central_sign_and_sides(ep.param, ep.chi, psi)
                assert record.central_sign == record.so_side

    def test_central_signs_of_rank_one(self, psi, phi_one):
        group = component_group(phi_one)
        assert central_sign_and_sides(phi_one, group.character((1,)), psi).central_sign == -1
        assert central_sign_and_sides(phi_one, group.character((-1,)), psi).central_sign == 1


class TestBaseTable:
    """Tabela de posto ≤ 1"""

    def test_iwahori_entries(self, psi):
        rank_one = {e.name: e for e in base_table(psi) if e.enhanced.param.rank == 1 and e.side is not Side.OUTSIDE}
        assert {name: e.side for name, e in rank_one.items()} == {
            'st(1)': Side.PLUS,
            'st(sgn)': Side.PLUS,
            'weil-odd': Side.MINUS,
        }
        signs = {name: central_sign_and_sides(e.enhanced.param, e.enhanced.chi, psi).central_sign
                 for name, e in rank_one.items()}
        assert signs == {'st(1)': 1, 'st(sgn)': 1, 'weil-odd': -1}

    def test_metaplectic_labels(self, psi):
        table = {e.name: e.enhanced.chi.render() for e in base_table(psi)}
        assert table['st(1)'] == '-'
        assert table['st(sgn)'] == '+'
        assert table['weil-odd'] == '+'
        assert table['trivial'] == ''


class TestBlockMembership:
    """Pertinência aos blocos de Iwahori"""

    def test_rank_one(self, service, phi_one):
        group = component_group(phi_one)
        assert service.block_membership(phi_one, group.character((1,))) is Side.MINUS
        assert service.block_membership(phi_one, group.character((-1,))) is Side.PLUS

    def test_outside(self, service):
        phi = normalize([(SGN, 2, 1)])
        assert service.block_membership(phi, component_group(phi).character((-1,))) is Side.OUTSIDE

    def test_through_descent(self, service, phi_chain):
        chi = component_group(phi_chain).trivial_character()
        assert service.block_membership(phi_chain, chi) is Side.PLUS

    def test_ramified_block_is_rejected(self, service):
        rho = AbstractLabel('A', 2, SelfDualType.SYMPLECTIC, eps_half=1, frob_sign=1)
        phi = normalize([(rho, 1, 1)])
        with pytest.raises(NotEvaluable):
            service.block_membership(phi, component_group(phi).trivial_character())

    def test_cache(self, service, phi_chain):
        chi = component_group(phi_chain).trivial_character()
        service.block_membership(phi_chain, chi)
        assert (phi_chain, chi.signs) in service._cache
        service.clear_cache()
        assert service._cache == {}


class TestVerifyPipeline:
    """Derivação recursiva de χ° e comparação com χ·ν_φ"""

    def test_chain_trace(self, service, phi_chain):
        report = service.verify_pipeline(phi_chain, component_group(phi_chain).trivial_character())
        assert report.stages == ['Descent', 'LIR', 'Base']
        assert report.agreement
        assert report.path_independent
        assert report.derived.signs == (-1, -1)
        assert report.tree.choices == ('[1 x S(4)]',)

    def test_base_case(self, service, phi_one):
        report = service.verify_pipeline(phi_one, component_group(phi_one).character((-1,)))
        assert report.stages == ['Base']
        assert report.to_dict()['tree']['choices'] == ['st(1)']
        assert report.side is Side.PLUS
        assert report.to_dict()['side'] == 'IwahoriPlus'
        assert report.agreement

    def test_good_parity_stage(self, service):
        phi = normalize([(TRIVIAL, 2, 1), (SGN, 1, 2)])
        report = service.verify_pipeline(phi, component_group(phi).character((-1,)))
        assert report.stages == ['GoodParity', 'Base']
        assert report.agreement

    def test_outside_block(self, service):
        phi = normalize([(SGN, 2, 1)])
        with pytest.raises(OutsideBlock):
            service.verify_pipeline(phi, component_group(phi).character((-1,)))

    def test_report_dict(self, service, phi_chain):
        data = service.verify_pipeline(phi_chain, component_group(phi_chain).trivial_character()).to_dict()
        assert data['closedFormChiSO'] == '-,-'
        assert data['derivedChiSO'] == '-,-'
        assert data['tree']['children'][0]['param'] == '2*[1 x S(2)]'

    def test_jacquet_via_endoscopy_matches_formula(self, service, phi_chain):
        chi = component_group(phi_chain).trivial_character()
        lowered = service.jacquet_via_endoscopy(phi_chain, chi, SimpleBlock(TRIVIAL, 4))
        assert lowered.param.render() == '2*[1 x S(2)]'
        assert lowered.chi.signs == (1,)
        assert service.jacquet_via_endoscopy(phi_chain, chi, SimpleBlock(TRIVIAL, 2)) is None

    def test_verify_many_low_rank(self, service):
        for n in (1, 2):
            reports = service.verify_many(enumerate_enhanced(n))
            assert reports
            assert all(r.agreement and r.path_independent for r in reports)

    @pytest.mark.slow
    def test_verify_many_up_to_rank_four(self, service):
        for n in (3, 4):
            reports = service.verify_many(enumerate_enhanced(n))
            assert all(r.agreement and r.path_independent for r in reports)

    @pytest.mark.parametrize("ranks", [(1, 2), pytest.param((3,), marks=pytest.mark.slow)])
    def test_verify_many_with_unbounded_parameters(self, service, ranks):
        langlands = 0
        for n in ranks:
            reports = service.verify_many(enumerate_enhanced(n, exponents=(Fraction(0), Fraction(1, 2))))
            assert all(r.agreement and r.path_independent for r in reports)
            rooted = [r for r in reports if r.stages[0] == 'Langlands']
            assert all(not flags(r.enhanced.param).bounded for r in rooted)
            langlands += len(rooted)
        assert langlands > 0

    def test_unbounded_pair_goes_through_langlands(self, service):
        phi = normalize([(unr(0, Fraction(1, 2)), 1, 1), (unr(0, Fraction(-1, 2)), 1, 1), (TRIVIAL, 2, 1)])
        chi = component_group(phi).character((-1,))
        report = service.verify_pipeline(phi, chi)
        assert report.stages == ['Langlands', 'Base']
        assert report.tree.children[0].enhanced.param == normalize([(TRIVIAL, 2, 1)])
        assert report.agreement


class TestSideCoherence:
    """IwahoriPlus ⇒ sinal central +1; IwahoriMinus ⇒ -1"""

    @pytest.mark.parametrize("n", [1, 2, 3, pytest.param(4, marks=pytest.mark.slow)])
    def test_membership_matches_central_sign(self, service, psi, n):
        classified = 0
        for ep in enumerate_enhanced(n):
            side = service.block_membership(ep.param, ep.chi)
            if side is Side.OUTSIDE:
                continue
            classified += 1
            sign = central_sign_and_sides(ep.param, ep.chi, psi).central_sign
            assert sign == (1 if side is Side.PLUS else -1), ep.render()
        assert classified > 0


class TestPacketTable:
    """Tabela do pacote completo"""

    def test_rank_one(self, service, phi_one):
        df = service.packet_table(phi_one)
        assert list(df.columns) == ['chi', 'chiSO', 'centralSign', 'soForm', 'side']
        rows = df.set_index('chi').to_dict('index')
        assert rows['+'] == {'chiSO': '-', 'centralSign': -1, 'soForm': 'V-', 'side': 'IwahoriMinus'}
        assert rows['-'] == {'chiSO': '+', 'centralSign': 1, 'soForm': 'V+', 'side': 'IwahoriPlus'}

    def test_ramified_member_side_unavailable(self, service):
        rho = AbstractLabel('A', 2, SelfDualType.SYMPLECTIC, eps_half=1, frob_sign=1)
        df = service.packet_table(normalize([(rho, 1, 1)]))
        assert set(df['side']) == {'n/a'}


class TestEnumeration:
    """Enumeração exaustiva de parâmetros trivialmente ramificados"""

    @pytest.mark.parametrize("n,count", [(1, 2), (2, 3), (3, 6)])
    def test_discrete_counts(self, n, count):
        assert len(enumerate_parameters(n, discrete_only=True)) == count

    def test_rank_zero(self):
        assert [p.render() for p in enumerate_parameters(0)] == ['0']

    def test_rank_bound(self):
        with pytest.raises(RankBound):
            enumerate_parameters(-1)
        with pytest.raises(RankBound):
            enumerate_parameters(7)

    def test_rank_bound_from_environment(self):
        with patch.dict('os.environ', {'MPSO_MAX_RANK': '2'}):
            reset_config()
            with pytest.raises(RankBound):
                enumerate_parameters(3)

    def test_quarter_phases_add_dual_pairs(self):
        params = enumerate_parameters(1, phases=('1', '-1', 'i', '-i'))
        assert '[unr(1/4,0) x S(1)] + [unr(3/4,0) x S(1)]' in [p.render() for p in params]

    def test_phase_bound_from_environment(self):
        with patch.dict('os.environ', {'MPSO_PHASE_BOUND': '2'}):
            reset_config()
            with pytest.raises(ParameterError):
                enumerate_parameters(1, phases=('i',))

    def test_unknown_phase(self):
        with pytest.raises(ParameterError):
            enumerate_parameters(1, phases=('zeta',))

    def test_exponents_give_unbounded_parameters(self):
        params = enumerate_parameters(1, exponents=(Fraction(0), Fraction(1, 2)))
        assert '[unr(0,-1/2) x S(1)] + [unr(0,1/2) x S(1)]' in [p.render() for p in params]

    def test_enhanced_enumeration_covers_packets(self):
        enhanced = list(enumerate_enhanced(1, discrete_only=True))
        assert len(enhanced) == 4
