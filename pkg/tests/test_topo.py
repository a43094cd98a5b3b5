import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import filled_triangle, random_complex, triangle_boundary
from topotensor.complex import BettiSignature, ComplexStrategy, barycentric_subdivide, betti
from topotensor.eigen import oracle_sweep_2
from topotensor.errors import SchemeError
from topotensor.synth import GenSpec, generate
from topotensor.tensor import symmetrize
from topotensor.topo import (
    CoefficientScheme,
    count_bound_diagnostic,
    eigenvalue_count_bound,
    invariance_check,
    make_coefficients,
    topo_report,
    topological_eigenvalue,
)

AFFINE_1_2 = CoefficientScheme.affine(1, 2)


class TestCoefficients:
    def test_affine_presets(self):
        assert make_coefficients(AFFINE_1_2, 2) == [2, 3]
        assert make_coefficients(CoefficientScheme.affine(1, 1), 3) == [1, 2, 3]

    def test_explicit_pass_through(self):
        assert make_coefficients(CoefficientScheme.explicit([5]), 1) == [5]

    def test_explicit_length_mismatch(self):
        with pytest.raises(SchemeError):
            make_coefficients(CoefficientScheme.explicit([1, 2]), 3)

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("affine:1,2", CoefficientScheme.affine(1, 2)),
            ("explicit:2,3", CoefficientScheme.explicit([2, 3])),
            ("explicit:0.5", CoefficientScheme.explicit([0.5])),
        ],
    )
    def test_parse(self, text, expected):
        assert CoefficientScheme.parse(text) == expected

    @pytest.mark.parametrize("text", ["affine:1", "explicit:", "poly:1,2", "affine:a,b"])
    def test_parse_errors(self, text):
        with pytest.raises(SchemeError):
            CoefficientScheme.parse(text)

    @pytest.mark.parametrize("scheme", [AFFINE_1_2, CoefficientScheme.explicit([1.5, -2])])
    def test_dict_round_trip(self, scheme):
        assert CoefficientScheme.from_dict(scheme.to_dict()) == scheme

    def test_serialization_shape(self):
        assert AFFINE_1_2.to_dict() == {"scheme": "affine", "a": 1, "b": 2}


class TestTopologicalEigenvalue:
    def test_worked_examples(self):
        assert topological_eigenvalue([1, 2], [2, 3]) == 8
        assert topological_eigenvalue([1, 4, 2], [1, 2, 3]) == 15
        assert topological_eigenvalue([1, 0, 0], make_coefficients(AFFINE_1_2, 3)) == 2

    def test_zero_signature(self):
        assert topological_eigenvalue([0, 0, 0], [7.5, -1, 3]) == 0

    def test_length_mismatch(self):
        with pytest.raises(SchemeError):
            topological_eigenvalue([1, 0], [1, 2, 3])

    @given(
        st.lists(st.integers(0, 50), min_size=1, max_size=6).flatmap(
            lambda b: st.tuples(
                st.just(b),
                st.lists(st.integers(-100, 100), min_size=len(b), max_size=len(b)),
                st.lists(st.integers(-100, 100), min_size=len(b), max_size=len(b)),
            )
        )
    )
    def test_linearity_exact_on_integers(self, args):
        b, c1, c2 = args
        c = [x + y for x, y in zip(c1, c2)]
        assert topological_eigenvalue(b, c) == topological_eigenvalue(b, c1) + topological_eigenvalue(b, c2)

    @given(
        st.lists(st.integers(0, 20), min_size=1, max_size=5),
        st.integers(1, 4),
        st.floats(-10, 10),
        st.floats(-10, 10),
    )
    def test_padding_neutral(self, b, extra, a, bb):
        c = [a * k + bb for k in range(len(b) + extra)]
        assert topological_eigenvalue(b + [0] * extra, c) == topological_eigenvalue(b, c[: len(b)])

    def test_real_linearity(self):
        rng = np.random.default_rng(0)
        b = [1, 3, 2]
        for _ in range(20):
            c1, c2 = rng.standard_normal(3), rng.standard_normal(3)
            lhs = topological_eigenvalue(b, c1 + c2)
            rhs = topological_eigenvalue(b, c1) + topological_eigenvalue(b, c2)
            assert abs(lhs - rhs) < 1e-12


class TestCountBound:
    def test_worked_examples(self):
        assert eigenvalue_count_bound([1, 2]) == 3
        assert eigenvalue_count_bound([1, 3, 1]) == 5
        assert eigenvalue_count_bound([1]) == 1

    def test_report_consistency(self):
        rep = topo_report(BettiSignature((1, 4, 2)), CoefficientScheme.affine(1, 1))
        assert rep.lambda_topo == 15
        assert rep.count_bound == eigenvalue_count_bound(rep.betti) == 7
        assert rep.to_dict() == {"betti": [1, 4, 2], "coeffs": [1, 2, 3], "lambda_topo": 15, "count_bound": 7}


class TestInvariance:
    def test_reflexive(self):
        c = triangle_boundary()
        r = invariance_check(c, c, CoefficientScheme.explicit([4, 9]))
        assert r.equivalent_signature and r.lambda1 == r.lambda2

    def test_subdivision(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            c = random_complex(rng)
            r = invariance_check(c, barycentric_subdivide(c), AFFINE_1_2)
            assert r.equivalent_signature and r.lambda1 == r.lambda2

    def test_circle_vs_disk(self):
        r = invariance_check(triangle_boundary(), filled_triangle(), AFFINE_1_2)
        assert not r.equivalent_signature
        assert r.betti1[1] == 1 and r.betti2[1] == 0
        assert r.lambda1 != r.lambda2


class TestDiagnostic:
    def test_diagonal_tensor(self):
        t = generate(GenSpec("diagonal", (2, 2, 2), diag=(3, 1)))
        diag = count_bound_diagnostic(t, ComplexStrategy("symmetric_clique"))
        # solver finds (3, e1), (1, e2) and the mixed pair; complex is two points
        assert diag.distinct_eigenvalues == len(oracle_sweep_2(t)) == 3
        assert diag.bound == 2
        assert diag.satisfied is False

    def test_satisfied_when_one_eigenvalue(self):
        # 1-D tensor of order 3 whose complex is a single vertex: [1, 0, 0]
        t = generate(GenSpec("explicit", (1, 1, 1), values=(2.0,)))
        diag = count_bound_diagnostic(t)
        assert (diag.distinct_eigenvalues, diag.bound, diag.satisfied) == (1, 1, True)

    def test_random_golden(self, golden):
        t = symmetrize(generate(GenSpec("random", (2, 2, 2), 17)))
        golden("count_bound_random_2x2x2_seed17", count_bound_diagnostic(t).to_dict())
