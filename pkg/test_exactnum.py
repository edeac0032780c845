import unittest
import math
import random
import time
import sys
sys.path.append("src")
from fractions import Fraction
from spincouple.exactnum import (
    GaussianRational, SurdScalar, ComplexSurd, ZERO, ONE, I,
    rational, surd_normalize, surd_mul, surd_try_add, surd_text,
    gaussian_add, gaussian_sub, gaussian_mul, gaussian_conjugate, gaussian_invert,
    gaussian_text, to_float, to_text
)
from spincouple.util import DomainError, DivisionByZero, MixedRadicand, Incompatible

def random_fraction(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 12))

def random_gaussian(rng):
    return GaussianRational(random_fraction(rng), random_fraction(rng))

def random_surd(rng):
    return surd_normalize(random_fraction(rng), rng.randint(0, 60))

def is_squarefree(n):
    return all(n % (k*k) for k in range(2, math.isqrt(n) + 1))

class TestRational(unittest.TestCase):

    def test_reduced(self):
        self.assertEqual(rational(4, -6), Fraction(-2, 3))
        self.assertEqual(rational(0, 5).denominator, 1)

    def test_zero_denominator(self):
        with self.assertRaises(DivisionByZero):
            rational(1, 0)

class TestGaussian(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(gaussian_mul(I, I), GaussianRational(-1))
        self.assertEqual(gaussian_conjugate(ONE + I), ONE - I)
        self.assertEqual(gaussian_invert(ONE + I), GaussianRational(Fraction(1, 2), Fraction(-1, 2)))

    def test_invert_zero(self):
        with self.assertRaises(DivisionByZero):
            gaussian_invert(ZERO)

    def test_floats_rejected(self):
        with self.assertRaises(DomainError):
            GaussianRational(0.5)

    def test_field_axioms(self):
        rng = random.Random(20240611)
        for _ in range(500):
            a, b, c = (random_gaussian(rng) for _ in range(3))
            self.assertEqual(gaussian_add(a, b), gaussian_add(b, a))
            self.assertEqual(gaussian_mul(a, b), gaussian_mul(b, a))
            self.assertEqual((a + b) + c, a + (b + c))
            self.assertEqual((a*b)*c, a*(b*c))
            self.assertEqual(a*(b + c), a*b + a*c)
            self.assertEqual(gaussian_sub(a, a), ZERO)
            if a:
                self.assertEqual(a*gaussian_invert(a), ONE)

    def test_text(self):
        self.assertEqual(gaussian_text(GaussianRational(Fraction(1, 2), Fraction(-1, 2))), "1/2 - 1/2 i")
        self.assertEqual(gaussian_text(I), "i")
        self.assertEqual(gaussian_text(-I), "-i")
        self.assertEqual(gaussian_text(GaussianRational(3)), "3")
        self.assertEqual(gaussian_text(GaussianRational(1, 2)), "1 + 2 i")

class TestSurd(unittest.TestCase):

    def test_normalize(self):
        self.assertEqual(surd_normalize(1, Fraction(1, 6)), SurdScalar(Fraction(1, 6), 6))
        self.assertEqual(surd_normalize(1, Fraction(1, 6)).radicand, 6)
        zero = surd_normalize(5, 0)
        self.assertEqual((zero.coeff, zero.radicand), (0, 1))
        eight = surd_normalize(1, 8)
        self.assertEqual((eight.coeff, eight.radicand), (2, 2))

    def test_large_radicands(self):
        self.assertEqual(surd_normalize(1, 2**40*3), SurdScalar(2**20, 3))
        self.assertEqual(surd_normalize(1, 1000003**2*5), SurdScalar(1000003, 5))
        semiprime = 100003*1000003
        self.assertEqual(surd_normalize(1, semiprime), SurdScalar(1, semiprime))
        start = time.monotonic()
        with self.assertRaises(DomainError):
            surd_normalize(1, 1000000000000000003)
        with self.assertRaises(DomainError):
            surd_normalize(1, int("7"*3000))
        self.assertLess(time.monotonic() - start, 5)

    def test_negative_radicand(self):
        with self.assertRaises(DomainError):
            surd_normalize(1, -2)

    def test_mul(self):
        half_root2 = SurdScalar(Fraction(1, 2), 2)
        self.assertEqual(surd_mul(half_root2, half_root2), Fraction(1, 2))
        self.assertEqual(surd_mul(half_root2, half_root2).radicand, 1)
        sixth = SurdScalar(Fraction(1, 6), 6)
        self.assertEqual(surd_mul(sixth, sixth), Fraction(1, 6))
        self.assertEqual(surd_mul(half_root2, SurdScalar(Fraction(1, 3), 3)), sixth)

    def test_try_add(self):
        a = SurdScalar(Fraction(1, 6), 6)
        self.assertEqual(surd_try_add(a, SurdScalar(Fraction(2, 6), 6)), SurdScalar(Fraction(1, 2), 6))
        self.assertEqual(surd_try_add(a, SurdScalar()), a)
        self.assertIsNone(surd_try_add(SurdScalar(Fraction(1, 2), 2), SurdScalar(Fraction(1, 3), 3)))
        with self.assertRaises(MixedRadicand):
            SurdScalar(1, 2) + SurdScalar(1, 3)

    def test_to_float(self):
        self.assertAlmostEqual(to_float(SurdScalar(Fraction(1, 6), 6)).real, 0.4082482904638630, places=15)
        self.assertEqual(to_float(SurdScalar()), 0)
        self.assertAlmostEqual(to_float(SurdScalar(Fraction(1, 2), 2)).real, 0.7071067811865476, places=15)

    def test_text(self):
        self.assertEqual(surd_text(SurdScalar(Fraction(1, 6), 6)), "(1/6)*sqrt(6)")
        self.assertEqual(surd_text(SurdScalar(Fraction(1, 3), 6)), "(1/3)*sqrt(6)")
        self.assertEqual(surd_text(SurdScalar(2, 2)), "2*sqrt(2)")
        self.assertEqual(surd_text(SurdScalar(-1, 2)), "-sqrt(2)")
        self.assertEqual(surd_text(SurdScalar(1)), "1")
        self.assertEqual(surd_text(SurdScalar()), "0")
        self.assertEqual(to_text(Fraction(-3, 4)), "-3/4")

    def test_properties(self):
        rng = random.Random(7)
        for _ in range(500):
            a, b = random_surd(rng), random_surd(rng)
            p = surd_mul(a, b)
            self.assertTrue(is_squarefree(p.radicand))
            self.assertEqual(surd_normalize(p.coeff, p.radicand), p)
            self.assertTrue(math.isclose(to_float(p).real, a.to_float()*b.to_float(), rel_tol=1e-12, abs_tol=1e-300))
            self.assertEqual(surd_try_add(a, -a), SurdScalar())

    def test_ordering(self):
        self.assertLess(SurdScalar(1, 2), SurdScalar(1, 3))
        self.assertLess(SurdScalar(-1, 3), SurdScalar(-1, 2))
        self.assertLess(SurdScalar(-1), SurdScalar(Fraction(1, 6), 6))

    def test_inverse(self):
        s = SurdScalar(Fraction(1, 6), 6)
        self.assertEqual(s*s.inverse(), 1)
        with self.assertRaises(DivisionByZero):
            SurdScalar().inverse()

class TestComplexSurd(unittest.TestCase):

    def test_products(self):
        root2, root3 = ComplexSurd(ONE, 2), ComplexSurd(ONE, 3)
        self.assertEqual(root2*root3, ComplexSurd(ONE, 6))
        self.assertEqual(root2*root2, 2)
        self.assertEqual(ComplexSurd(I, 2)*ComplexSurd(I, 2), -2)

    def test_inverse(self):
        z = ComplexSurd(ONE + I, 2)
        self.assertEqual(z*z.inverse(), 1)

    def test_as_surd(self):
        self.assertEqual(ComplexSurd(ONE, 2).as_surd(), SurdScalar(1, 2))
        with self.assertRaises(Incompatible):
            ComplexSurd(I, 2).as_surd()

    def test_text(self):
        self.assertEqual(str(ComplexSurd(I, 2)), "(i)*sqrt(2)")
        self.assertEqual(str(ComplexSurd(GaussianRational(Fraction(-1, 2)), 2)), "(-1/2)*sqrt(2)")

if __name__ == '__main__':
    unittest.main()
