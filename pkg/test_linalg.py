import unittest
import sys
sys.path.append("src")
from fractions import Fraction
from spincouple.exactnum import SurdScalar, ONE, I, INV_SQRT2
from spincouple.linalg import ExactVector, ExactMatrix, swap_matrix, gram_schmidt, stack_rank, commutator
from spincouple.util import IncompatibleDimensions, MixedRadicand, ZeroVector

def vec(*xs, prefactor=SurdScalar(1)):
    return ExactVector(xs, prefactor)

class TestVector(unittest.TestCase):

    def test_normalized(self):
        v = vec(1, 1).normalized()
        self.assertTrue(v.is_normalized())
        self.assertEqual(v.prefactor, INV_SQRT2)
        with self.assertRaises(ZeroVector):
            ExactVector.zeros(3).normalized()

    def test_equality_across_prefactors(self):
        a = vec(2, 4, prefactor=SurdScalar(Fraction(1, 2), 2))
        b = vec(1, 2, prefactor=SurdScalar(1, 2))
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))
        self.assertNotEqual(a, -b)

    def test_canonical_phase(self):
        v = vec(0, -I, I).canonical()
        self.assertEqual(v, vec(0, 1, -1, prefactor=INV_SQRT2))
        self.assertTrue(v.components[1].is_real and v.components[1].re > 0)

    def test_mixed_sum(self):
        with self.assertRaises(MixedRadicand):
            vec(1, 0, prefactor=SurdScalar(1, 2)) + vec(0, 1, prefactor=SurdScalar(1, 3))
        total = vec(1, 0, prefactor=SurdScalar(1, 2)) + vec(0, 1, prefactor=SurdScalar(3, 2))
        self.assertEqual(total, vec(1, 3, prefactor=SurdScalar(1, 2)))

    def test_kron_and_inner(self):
        a, b = vec(1, I), vec(1, -I)
        self.assertEqual(a.inner(b), 0)
        self.assertEqual(a.inner(a), 2)
        self.assertEqual(a.kron(b).components, (ONE, -I, I, ONE))

    def test_dimension_mismatch(self):
        with self.assertRaises(IncompatibleDimensions):
            vec(1, 0) + vec(1, 0, 0)

class TestMatrix(unittest.TestCase):

    def test_rational_prefactor_folds(self):
        m = ExactMatrix.from_rows([[1, 0], [0, 1]], SurdScalar(2))
        self.assertEqual(m.prefactor, SurdScalar(1))
        self.assertEqual(m[0, 0], 2)

    def test_rank_and_nullspace(self):
        m = ExactMatrix.from_rows([[1, 2], [2, 4]])
        self.assertEqual(m.rank(), 1)
        null = m.nullspace()
        self.assertEqual(len(null), 1)
        self.assertTrue((m@null[0]).is_zero())
        self.assertEqual(ExactMatrix.identity(4).rank(), 4)
        self.assertEqual(ExactMatrix.identity(4).nullspace(), [])

    def test_complex_rank(self):
        m = ExactMatrix.from_rows([[1, I], [I, -1]])
        self.assertEqual(m.rank(), 1)
        self.assertTrue((m@m.nullspace()[0]).is_zero())

    def test_apply_mismatch(self):
        with self.assertRaises(IncompatibleDimensions):
            ExactMatrix.identity(3)@vec(1, 0)

    def test_adjoint_and_commutator(self):
        m = ExactMatrix.from_rows([[0, -I], [I, 0]])
        self.assertTrue(m.is_hermitian())
        self.assertTrue(commutator(m, m).is_zero())

    def test_swap_involution(self):
        for d in (2, 3):
            s = swap_matrix(d)
            self.assertEqual(s@s, ExactMatrix.identity(d*d))
        self.assertEqual(swap_matrix(2)@vec(0, 1, 0, 0), vec(0, 0, 1, 0))

    def test_gram_schmidt(self):
        basis = gram_schmidt([vec(1, 1, 0), vec(1, 0, 0), vec(2, 1, 0)])
        self.assertEqual(len(basis), 2)
        for i, a in enumerate(basis):
            for k, b in enumerate(basis):
                self.assertEqual(a.inner(b), int(i == k))

    def test_stack_rank(self):
        self.assertEqual(stack_rank([vec(1, 0), vec(0, 1), vec(1, 1)]), 2)
        self.assertEqual(stack_rank([]), 0)

if __name__ == '__main__':
    unittest.main()
