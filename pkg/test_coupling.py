import unittest
import sys
sys.path.append("src")
from fractions import Fraction
import numpy as np
from spincouple.exactnum import SurdScalar
from spincouple.linalg import ExactVector, gram_schmidt, stack_rank
from spincouple.coupling import (
    ProductSpace, total_operators, eigenspace_mu, eigenvalue_table,
    coupled_eigenbasis, verify_eigenstate, solve_superposition_ansatz,
    clebsch_gordan, cg_state, expand_in_coupled_basis, total_probability,
    dual_path_check, cg_orthonormality, to_standard, cg_vector,
    TotalSpinOperators, FloatTotalSpinOperators
)
from spincouple.spinops import float_spin
from spincouple.ketlang import EvalContext, evaluate_text
from spincouple.catalog import PAIR_STATES, CANDIDATES, ANSATZ_CASES, ELECTRON_STATES
from spincouple.util import (
    DomainError, UnsupportedSpin, NoSolution, ZeroVector, IncompatibleDimensions
)

try:
    import sympy
    from sympy.physics.wigner import clebsch_gordan as sympy_cg
except ImportError:
    sympy = None

PHOTONS = ProductSpace.of(1, 1)
ELECTRONS = ProductSpace.of("1/2", "1/2")

# Overall sign of the canonical coupled state relative to the catalog text
CATALOG_SIGNS = dict(S1=1, S2=1, S3=1, S4=1, S5=1, S6=-1, A1=-1, A2=1, A3=1)

def sign_between(a, b):
    if a == b:
        return 1
    if a == -b:
        return -1
    return 0

class TestProductSpace(unittest.TestCase):

    def test_layout(self):
        self.assertEqual(PHOTONS.dim, 9)
        self.assertEqual(PHOTONS.admissible_S(), [2, 1, 0])
        self.assertEqual(PHOTONS.index(1, 1), 0)
        self.assertEqual(PHOTONS.index(1, -1), 2)
        self.assertEqual(PHOTONS.index(-1, -1), 8)
        self.assertEqual(PHOTONS.labels()[4], (0, 0))
        self.assertEqual(ProductSpace.of("3/2", "1/2").admissible_S(), [2, 1])

class TestTotalOperators(unittest.TestCase):

    def test_commute(self):
        for space in (PHOTONS, ELECTRONS, PHOTONS.in_basis("cartesian"), ProductSpace.of(0, 1)):
            ops = total_operators(space)
            self.assertTrue(ops.commute())
            self.assertTrue(ops.is_hermitian())

    def test_eigenspace_mu(self):
        ops = total_operators(PHOTONS)
        self.assertEqual(len(eigenspace_mu(ops, 0)), 3)
        self.assertEqual(len(eigenspace_mu(ops, 2)), 1)
        self.assertEqual(eigenspace_mu(ops, 5), [])

    def test_eigenvalue_table(self):
        table = eigenvalue_table(total_operators(PHOTONS))
        self.assertEqual([(r.S, r.eigenvalue, r.multiplicity) for r in table], [(2, 6, 5), (1, 2, 3), (0, 0, 1)])
        table = eigenvalue_table(total_operators(ELECTRONS))
        self.assertEqual([(r.eigenvalue, r.multiplicity) for r in table], [(2, 3), (0, 1)])
        table = eigenvalue_table(total_operators(ProductSpace.of(0, 1)))
        self.assertEqual([(r.S, r.multiplicity) for r in table], [(1, 3)])

    def test_unsupported(self):
        with self.assertRaises(UnsupportedSpin):
            total_operators(ProductSpace.of("1/2", 1))
        with self.assertRaises(UnsupportedSpin):
            total_operators(ProductSpace.of("7/2", 1))

class TestCoupledBasis(unittest.TestCase):

    def test_eigenstates(self):
        for space in (PHOTONS, ELECTRONS, PHOTONS.in_basis("cartesian")):
            ops = total_operators(space)
            states = coupled_eigenbasis(space)
            self.assertEqual(len(states), space.dim)
            for s in states:
                self.assertTrue(verify_eigenstate(ops, s.vector, s.S, s.mu).passed, s.label)
                self.assertTrue(s.vector.is_normalized())
            for i, a in enumerate(states):
                for k, b in enumerate(states):
                    self.assertEqual(a.vector.inner(b.vector), int(i == k))

    def test_order_and_parity(self):
        states = coupled_eigenbasis(PHOTONS)
        self.assertEqual(
            [(s.S, s.mu) for s in states],
            [(2, 2), (2, 1), (2, 0), (2, -1), (2, -2), (1, 1), (1, 0), (1, -1), (0, 0)]
        )
        self.assertEqual([s.exchange_parity for s in states], [1]*5 + [-1]*3 + [1])

    def test_catalog_up_to_sign(self):
        ctx = EvalContext.of(1, 1)
        eigen = {(s.S, s.mu): s.vector for s in coupled_eigenbasis(PHOTONS)}
        for entry in PAIR_STATES:
            v = evaluate_text(entry.text, ctx)
            self.assertTrue(v.is_normalized(), entry.label)
            self.assertEqual(sign_between(eigen[entry.S, entry.mu], v), CATALOG_SIGNS[entry.label], entry.label)
            self.assertEqual(sign_between(cg_state(PHOTONS, entry.S, entry.mu).vector, v), CATALOG_SIGNS[entry.label], entry.label)

    def test_electrons(self):
        ctx = EvalContext.of("1/2", "1/2")
        eigen = {(s.S, s.mu): s.vector for s in coupled_eigenbasis(ELECTRONS)}
        for entry in ELECTRON_STATES:
            v = evaluate_text(entry.text, ctx)
            self.assertNotEqual(sign_between(eigen[entry.S, entry.mu], v), 0, entry.label)

    def test_degenerate_eigenspace(self):
        ops = total_operators(PHOTONS)
        basis = gram_schmidt(eigenspace_mu(ops, 0))
        self.assertEqual(len(basis), 3)
        for i, a in enumerate(basis):
            self.assertTrue((ops.sz@a).is_zero())
            for k, b in enumerate(basis):
                self.assertEqual(a.inner(b), int(i == k))
        coupled = [s.vector for s in coupled_eigenbasis(PHOTONS) if s.mu == 0]
        self.assertEqual(stack_rank(basis + coupled), 3)

    def test_spin_zero_factor(self):
        space = ProductSpace.of(0, 1)
        states = coupled_eigenbasis(space)
        self.assertEqual([s.vector for s in states], [ExactVector.basis(3, k) for k in range(3)])

class TestFloatFallback(unittest.TestCase):

    def check_basis(self, space, ops):
        states = coupled_eigenbasis(space, float_fallback=True)
        self.assertEqual(len(states), space.dim)
        self.assertTrue(all(s.provenance == "float" for s in states))
        m = np.array([s.vector for s in states])
        self.assertLess(np.max(np.abs(m.conj()@m.T - np.eye(space.dim))), 1e-12)
        for s in states:
            self.assertTrue(verify_eigenstate(ops, s.vector, s.S, s.mu).passed, s.label)
            cg = cg_vector(space, s.S, s.mu)
            self.assertLess(min(np.linalg.norm(s.vector - cg), np.linalg.norm(s.vector + cg)), 1e-12, s.label)

    def test_exact_preferred(self):
        self.assertIsInstance(total_operators(PHOTONS, float_fallback=True), TotalSpinOperators)
        self.assertEqual(coupled_eigenbasis(PHOTONS, float_fallback=True), coupled_eigenbasis(PHOTONS))

    def test_spin_algebra(self):
        for j in ("1/2", 1, "3/2", 2, "7/2"):
            self.assertTrue(all(c.passed for c in float_spin(j).check_algebra()), j)

    def test_half_and_one(self):
        space = ProductSpace.of("1/2", 1)
        ops = total_operators(space, float_fallback=True)
        self.assertIsInstance(ops, FloatTotalSpinOperators)
        self.assertTrue(ops.commute())
        self.assertTrue(ops.is_hermitian())
        self.assertEqual(
            [(r.S, r.multiplicity) for r in eigenvalue_table(ops)],
            [(Fraction(3, 2), 4), (Fraction(1, 2), 2)]
        )
        self.check_basis(space, ops)

    def test_three_halves_and_half(self):
        space = ProductSpace.of("3/2", "1/2")
        ops = total_operators(space, float_fallback=True)
        self.assertEqual([(r.S, r.multiplicity) for r in eigenvalue_table(ops)], [(2, 5), (1, 3)])
        self.check_basis(space, ops)

    def test_parity(self):
        states = coupled_eigenbasis(ProductSpace.of("3/2", "3/2"), float_fallback=True)
        self.assertEqual(len(states), 16)
        self.assertEqual([s.exchange_parity for s in states], [1]*7 + [-1]*5 + [1]*3 + [-1])

    def test_verify_exact_vector(self):
        space = ProductSpace.of("1/2", 1)
        ops = total_operators(space, float_fallback=True)
        top = space.product_state("1/2", 1)
        self.assertTrue(verify_eigenstate(ops, top, "3/2", "3/2").passed)
        result = verify_eigenstate(ops, top, "1/2", "3/2")
        self.assertFalse(result.passed)
        self.assertAlmostEqual(result.s2_residual, 3.0, places=12)
        with self.assertRaises(IncompatibleDimensions):
            verify_eigenstate(ops, np.zeros(4), "1/2", "1/2")

    def test_without_flag(self):
        with self.assertRaises(UnsupportedSpin):
            coupled_eigenbasis(ProductSpace.of("1/2", 1))
        with self.assertRaises(UnsupportedSpin):
            coupled_eigenbasis(ProductSpace.of("1/2", 1, "cartesian"), float_fallback=True)

class TestVerify(unittest.TestCase):

    def test_candidates(self):
        ctx = EvalContext.of(1, 1, "cartesian")
        ops = total_operators(PHOTONS.in_basis("cartesian"))
        for cand in CANDIDATES:
            result = verify_eigenstate(ops, evaluate_text(cand.text, ctx), cand.S, cand.mu)
            self.assertEqual(result.passed, cand.expected_pass, cand.label)

    def test_residual(self):
        ctx = EvalContext.of(1, 1)
        ops = total_operators(PHOTONS)
        result = verify_eigenstate(ops, evaluate_text("chi(0) x chi(0)", ctx), 0, 0)
        self.assertFalse(result.passed)
        self.assertFalse(result.s2_residual.is_zero())
        self.assertTrue(result.sz_residual.is_zero())
        # S^2 chi(0)chi(0) = 4 chi(0)chi(0) + 2 (chi(1)chi(-1) + chi(-1)chi(1))
        self.assertEqual(result.s2_residual, evaluate_text("4 chi(0) x chi(0) + 2 (chi(1) x chi(-1) + chi(-1) x chi(1))", ctx))

    def test_dimension_mismatch(self):
        with self.assertRaises(IncompatibleDimensions):
            verify_eigenstate(total_operators(PHOTONS), ExactVector.basis(4, 0), 1, 1)

class TestAnsatz(unittest.TestCase):

    def setUp(self):
        self.ctx = EvalContext.of(1, 1)
        self.ops = total_operators(PHOTONS)

    def candidates(self, case):
        return [evaluate_text(text, self.ctx) for text in case.candidates]

    def test_ratios(self):
        for case in ANSATZ_CASES:
            solution = solve_superposition_ansatz(self.ops, self.candidates(case), case.S, case.mu)
            self.assertEqual(solution.ratio(), case.ratio, case.label)
            self.assertEqual(solution.state.provenance, "ansatz")
            self.assertTrue(solution.state.vector.is_normalized())

    def test_s3_coefficients(self):
        case = ANSATZ_CASES[0]
        solution = solve_superposition_ansatz(self.ops, self.candidates(case), case.S, case.mu)
        self.assertEqual(solution.coefficients[0], SurdScalar(Fraction(1, 3), 6))
        self.assertEqual(solution.coefficients[1], SurdScalar(Fraction(1, 6), 6))
        self.assertEqual(solution.state.vector, evaluate_text(PAIR_STATES[2].text, self.ctx))

    def test_no_solution(self):
        case = ANSATZ_CASES[0]
        with self.assertRaises(NoSolution):
            solve_superposition_ansatz(self.ops, self.candidates(case), 1, 0)
        with self.assertRaises(NoSolution):
            solve_superposition_ansatz(self.ops, [], 2, 0)
        with self.assertRaises(ZeroVector):
            solve_superposition_ansatz(self.ops, [ExactVector.zeros(9)], 2, 0)

class TestClebschGordan(unittest.TestCase):

    def test_examples(self):
        c = clebsch_gordan(1, 0, 1, 0, 2, 0)
        self.assertEqual(c.value, SurdScalar(Fraction(1, 3), 6))
        self.assertEqual(str(c), "(1/3)*sqrt(6)")
        self.assertAlmostEqual(c.value.to_float(), 0.81650, places=5)
        self.assertEqual(str(clebsch_gordan(1, 1, 1, 1, 2, 2)), "1")
        self.assertEqual(str(clebsch_gordan(1, 1, 1, 1, 1, 2)), "0")
        self.assertEqual(clebsch_gordan(1, 0, 1, 0, 1, 0).value, 0)
        self.assertEqual(clebsch_gordan(1, 0, 1, 0, 0, 0).value, SurdScalar(Fraction(-1, 3), 3))
        self.assertEqual(clebsch_gordan("1/2", "1/2", "1/2", "-1/2", 0, 0).value, SurdScalar(Fraction(1, 2), 2))
        self.assertEqual(clebsch_gordan("1/2", "-1/2", "1/2", "1/2", 0, 0).value, SurdScalar(Fraction(-1, 2), 2))

    def test_selection_rules(self):
        self.assertEqual(clebsch_gordan(1, 1, 1, 0, 2, 0).value, 0)
        self.assertEqual(clebsch_gordan(1, 1, 1, 1, 3, 2).value, 0)
        self.assertEqual(clebsch_gordan(1, 2, 1, 0, 2, 2).value, 0)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            clebsch_gordan(-1, 0, 1, 0, 0, 0)
        with self.assertRaises(DomainError):
            clebsch_gordan("1/3", 0, 1, 0, 1, 0)

    @unittest.skipIf(sympy is None, "sympy not installed")
    def test_against_sympy(self):
        half = sympy.Rational(1, 2)
        for t1 in range(4):
            for t2 in range(4):
                for tJ in range(abs(t1 - t2), t1 + t2 + 1, 2):
                    for tm1 in range(-t1, t1 + 1, 2):
                        for tm2 in range(-t2, t2 + 1, 2):
                            tM = tm1 + tm2
                            if abs(tM) > tJ:
                                continue
                            ours = clebsch_gordan(
                                Fraction(t1, 2), Fraction(tm1, 2), Fraction(t2, 2),
                                Fraction(tm2, 2), Fraction(tJ, 2), Fraction(tM, 2)
                            ).value.to_float()
                            theirs = float(sympy_cg(t1*half, t2*half, tJ*half, tm1*half, tm2*half, tM*half))
                            self.assertAlmostEqual(ours, theirs, places=12, msg=(t1, tm1, t2, tm2, tJ, tM))

    def test_orthonormality(self):
        for j1, j2 in ((1, 1), ("1/2", "1/2"), ("3/2", 1), (2, "3/2")):
            report = cg_orthonormality(j1, j2)
            self.assertGreater(report.pairs_checked, 0)
            self.assertLess(report.max_deviation, 1e-12)

    def test_dual_path(self):
        for space in (PHOTONS, ELECTRONS):
            report = dual_path_check(space)
            self.assertTrue(report.passed)
            self.assertTrue(all(sign == 1 for sign in report.signs.values()))

    def test_cg_state(self):
        state = cg_state(PHOTONS, 2, 0)
        self.assertEqual(state.provenance, "clebsch_gordan")
        self.assertEqual(state.exchange_parity, 1)
        self.assertEqual(state.vector, evaluate_text(PAIR_STATES[2].text, EvalContext.of(1, 1)))
        cart = cg_state(PHOTONS.in_basis("cartesian"), 1, 0)
        self.assertEqual(cart.vector, evaluate_text(PAIR_STATES[7].text, EvalContext.of(1, 1, "cartesian")))
        with self.assertRaises(DomainError):
            cg_state(PHOTONS, 3, 0)
        with self.assertRaises(DomainError):
            cg_state(PHOTONS, 1, 2)

class TestExpansion(unittest.TestCase):

    def test_product_state(self):
        v = evaluate_text("chi(1) x chi(-1)", EvalContext.of(1, 1))
        amplitudes = expand_in_coupled_basis(PHOTONS, v)
        self.assertEqual(total_probability(amplitudes), 1)
        nonzero = {(a.S, a.mu): a.amplitude for a in amplitudes if a.amplitude}
        self.assertEqual(set(nonzero), {(2, 0), (1, 0), (0, 0)})
        self.assertEqual(nonzero[2, 0], SurdScalar(Fraction(1, 6), 6))

    def test_cartesian(self):
        space = PHOTONS.in_basis("cartesian")
        v = evaluate_text("chi(0) x chi(1)", EvalContext.of(1, 1, "cartesian"))
        self.assertEqual(to_standard(space, v), ExactVector.basis(9, PHOTONS.index(0, 1)))
        self.assertEqual(total_probability(expand_in_coupled_basis(space, v)), 1)

if __name__ == '__main__':
    unittest.main()
