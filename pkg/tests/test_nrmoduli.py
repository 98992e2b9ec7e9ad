"""The fifteen signed quadratic forms, the quadratic differential they
assemble, its branch-point evaluation, and the exact one-dimensional
kernels at the six branch points."""

import random
from fractions import Fraction

import pytest

from spincert.nrmoduli import (
    BranchConfig,
    Q_RING,
    QP_RING,
    _parse_linear,
    alt_r_table,
    build_r_table,
    distinguished_vector_polys,
    eval_at_branch,
    h_consistency,
    k2_section_eval,
    kernel_at_branch,
    proportional_over_q,
    signed_permutation_record,
    standard_branch_config,
    transcription_crosscheck,
    verify_distinguished_covector,
)


@pytest.fixture(scope="module")
def table():
    return build_r_table()


@pytest.fixture(scope="module")
def config():
    return standard_branch_config()


def frac_point(*vals):
    return [Fraction(v) for v in vals]


class TestTable:
    def test_crosscheck_passes(self):
        report = transcription_crosscheck()
        assert report["passed"]
        assert report["pairs"] == 15

    def test_all_fifteen_pairs(self, table):
        assert len(table.pairs) == 15
        assert table.pairs == tuple(
            (i, j) for i in range(1, 7) for j in range(i + 1, 7)
        )

    def test_r12_leading_term(self, table):
        r12 = table.quadratic(1, 2)
        assert r12.terms[(2, 0, 0, 0, 2, 0, 0, 0)] == 1

    def test_r14_sign(self, table):
        assert table.sign(1, 4) == -1
        r14 = table.quadratic(1, 4)
        assert r14.terms[(2, 0, 0, 0, 0, 0, 0, 2)] == -1

    def test_frozen_scalar_values(self, table):
        pt = frac_point(1, 2, 3, 4, 5, 6, 7, 8)
        assert table.quadratic(5, 6).eval(pt) == 16
        assert table.quadratic(1, 4).eval(pt) == -256

    def test_bidegree_two_two(self, table):
        for pair in table.pairs:
            q = table.quadratic(*pair)
            for exps in q.terms:
                assert sum(exps[:4]) == 2
                assert sum(exps[4:]) == 2

    def test_alt_table_same_pairs(self, table):
        assert alt_r_table().pairs == table.pairs

    def test_perturbed_flips_exactly_one_sign(self, table):
        bad = table.perturbed(2, 5)
        assert bad.sign(2, 5) == -table.sign(2, 5)
        assert bad.quadratic(2, 5) == -table.quadratic(2, 5)
        others = [p for p in table.pairs if p != (2, 5)]
        assert all(bad.quadratic(*p) == table.quadratic(*p) for p in others)
        assert table.sign(2, 5) == 1

    def test_table_is_immutable(self, table):
        with pytest.raises(AttributeError):
            table.entries = {}

    def test_parser_rejects_malformed_terms(self):
        with pytest.raises(ValueError):
            _parse_linear("q1p1 +q2p2")
        with pytest.raises(ValueError):
            _parse_linear("+q1p1 +q1p1")
        with pytest.raises(ValueError):
            _parse_linear("+q5p1")


class TestBranchConfig:
    def test_standard_points(self, config):
        assert config.points == tuple(Fraction(v) for v in range(6))
        assert config.point(1) == 0
        assert config.point(6) == 5

    def test_distinctness_required(self):
        with pytest.raises(ValueError):
            BranchConfig([0, 1, 2, 3, 4, 4])

    def test_six_points_required(self):
        with pytest.raises(ValueError):
            BranchConfig([0, 1, 2, 3, 4])

    def test_index_range(self, config):
        with pytest.raises(ValueError):
            config.point(0)
        with pytest.raises(ValueError):
            config.point(7)


class TestHConsistency:
    def test_standard_config(self, config):
        assert h_consistency(config) is True

    def test_random_rational_configs(self):
        rng = random.Random(20260816)
        for _ in range(3):
            pts = set()
            while len(pts) < 6:
                pts.add(Fraction(rng.randint(-30, 30), rng.randint(1, 7)))
            assert h_consistency(BranchConfig(sorted(pts))) is True

    def test_sign_flip_breaks_identity(self, config, table):
        assert h_consistency(config, table=table.perturbed(1, 4)) is False
        assert h_consistency(config, reference_table=alt_r_table().perturbed(3, 6)) is False

    def test_numeric_sampling(self, config, table):
        # secondary oracle: plain Fraction arithmetic straight off the
        # coefficient grids, no polynomial layer involved
        rng = random.Random(7)
        for _ in range(5):
            q = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
            p = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
            x = Fraction(rng.randint(6, 30), rng.randint(1, 5))
            lhs = Fraction(0)
            rhs = Fraction(0)
            y2 = Fraction(1)
            for k in range(1, 7):
                y2 *= x - config.point(k)
            for (i, j) in table.pairs:
                grid = table.linear_grid(i, j)
                l = sum(
                    Fraction(grid[a][b]) * q[a] * p[b]
                    for a in range(4)
                    for b in range(4)
                )
                rij = table.sign(i, j) * l * l
                lhs += rij / ((x - config.point(i)) * (x - config.point(j)))
                cof = Fraction(1)
                for k in range(1, 7):
                    if k != i and k != j:
                        cof *= x - config.point(k)
                rhs += cof * rij
            assert lhs == rhs / y2


class TestEvalAtBranch:
    def test_exactly_five_contributions(self, config, table):
        # frozen cofactor products for branch points 0..5 at x = 0
        weights = {2: 120, 3: 60, 4: 40, 5: 30, 6: 24}
        oracle = QP_RING.zero()
        for j, w in weights.items():
            oracle = oracle + table.quadratic(1, j) * w
        assert eval_at_branch(config, 1) == oracle

    def test_vanishes_at_distinguished_vector(self, config):
        q = eval_at_branch(config, 1)
        subs = {
            4: QP_RING.gen(1),
            5: -QP_RING.gen(0),
            6: QP_RING.gen(3),
            7: -QP_RING.gen(2),
        }
        assert q.subs(subs).is_zero

    def test_generic_cotangent_value_nonzero(self, config):
        # p = (2, -1, 0, 0) pairs to zero with q = (1, 2, 3, 4)
        q = eval_at_branch(config, 1)
        assert q.eval(frac_point(1, 2, 3, 4, 2, -1, 0, 0)) == 3356

    def test_every_branch_is_quadratic_in_p(self, config):
        for i in range(1, 7):
            q = eval_at_branch(config, i)
            assert not q.is_zero
            for exps in q.terms:
                assert sum(exps[:4]) == 2
                assert sum(exps[4:]) == 2

    def test_index_validation(self, config):
        with pytest.raises(ValueError):
            eval_at_branch(config, 0)
        with pytest.raises(ValueError):
            eval_at_branch(config, 7)


class TestDistinguishedCovector:
    def test_report_passes(self):
        report = verify_distinguished_covector()
        assert report["passed"]
        assert report["incidence_zero"]
        assert set(report["vanishing"]) == {"12", "13", "14", "15", "16"}
        assert all(report["vanishing"].values())

    def test_single_form_vanishes(self, table):
        l13 = table.linear_form(1, 3)
        subs = {
            4: QP_RING.gen(1),
            5: -QP_RING.gen(0),
            6: QP_RING.gen(3),
            7: -QP_RING.gen(2),
        }
        assert l13.subs(subs).is_zero

    def test_wrong_vector_fails(self, table):
        # dropping the sign flips leaves l_{12} at 2 q1 q2 - 2 q3 q4
        subs = {
            4: QP_RING.gen(1),
            5: QP_RING.gen(0),
            6: QP_RING.gen(3),
            7: QP_RING.gen(2),
        }
        residual = table.linear_form(1, 2).subs(subs)
        assert not residual.is_zero

    def test_perturbed_table_still_passes(self, table):
        # sign flips do not move the zero locus of the linear forms
        report = verify_distinguished_covector(table.perturbed(1, 3))
        assert report["passed"]


class TestKernelAtBranch:
    def test_dimension_one_everywhere(self, config):
        for i in range(1, 7):
            report = kernel_at_branch(config, i)
            assert report["dimension"] == 1
            assert report["incidence_zero"]
            assert report["quadratic_vanishes"]

    def test_branch_one_generator(self, config, table):
        report = kernel_at_branch(config, 1, table)
        gen = tuple(Q_RING.parse(s) for s in report["generator"])
        assert proportional_over_q(gen, distinguished_vector_polys())
        assert report["reduced_generator"] == ("1*q2", "-1*q1", "1*q4", "-1*q3")

    def test_generators_solve_numeric_samples(self, config, table):
        # secondary smoke: the symbolic kernel vector, specialized at a
        # random rational q, kills every 4x4-grid row numerically
        rng = random.Random(99)
        for i in range(1, 7):
            report = kernel_at_branch(config, i, table)
            gen = [Q_RING.parse(s) for s in report["generator"]]
            qv = frac_point(*(rng.randint(1, 40) for _ in range(4)))
            pv = [g.eval(qv) for g in gen]
            assert any(v != 0 for v in pv)
            for j in range(1, 7):
                if j == i:
                    continue
                grid = table.linear_grid(i, j)
                val = sum(
                    Fraction(grid[a][b]) * qv[a] * pv[b]
                    for a in range(4)
                    for b in range(4)
                )
                assert val == 0

    def test_symmetry_record_structure(self):
        record = signed_permutation_record()
        assert set(record["images"]) == set(range(1, 7))
        assert record["images"][1]["pattern"] == ("+q2", "-q1", "+q4", "-q3")
        for info in record["images"].values():
            assert isinstance(info["signed_permutation"], bool)
            if info["signed_permutation"]:
                assert len(info["pattern"]) == 4

    def test_index_validation(self, config):
        with pytest.raises(ValueError):
            kernel_at_branch(config, 0)


class TestK2SectionEval:
    def test_constant_section(self, config):
        for i in range(1, 7):
            assert k2_section_eval(1, 0, 0, config, i) == 1

    def test_linear_section(self, config):
        for i in range(1, 7):
            assert k2_section_eval(0, 1, 0, config, i) == config.point(i)

    def test_double_root_section(self, config):
        for i in range(1, 7):
            xi = config.point(i)
            assert k2_section_eval(xi * xi, -2 * xi, 1, config, i) == 0

    def test_linearity(self, config):
        rng = random.Random(5)
        for _ in range(10):
            a = [Fraction(rng.randint(-9, 9)) for _ in range(3)]
            b = [Fraction(rng.randint(-9, 9)) for _ in range(3)]
            i = rng.randint(1, 6)
            lhs = k2_section_eval(a[0] + b[0], a[1] + b[1], a[2] + b[2], config, i)
            rhs = k2_section_eval(*a, config, i) + k2_section_eval(*b, config, i)
            assert lhs == rhs
