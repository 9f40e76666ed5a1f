"""
Pruebas de la aritmética de cuerpos finitos y del álgebra lineal exacta.
"""

import itertools
import unittest
from fractions import Fraction

import numpy as np

from algebra.cuerpos import (
    factorizar_potencia_prima, fraccion_a_texto, identidad, invertibles_lote, inversa_racional,
    make_field, make_field_of_order, mat_inverse, mat_mul, mat_rank, matriz, solve_homogeneous
)
from algebra.errores import ErrorLimite, ErrorValidacion


class TestCuerpos(unittest.TestCase):
    """Operaciones elementales en cuerpos primos y extensiones"""

    @classmethod
    def setUpClass(cls):
        cls.F5 = make_field(5)
        cls.F4 = make_field(2, 2)
        cls.F9 = make_field_of_order(9)
        cls.F16 = make_field(2, 4)

    def test_cuerpo_primo(self):
        self.assertEqual(int(self.F5.suma(3, 4)), 2)
        self.assertEqual(int(self.F5.producto(3, 4)), 2)
        self.assertEqual(int(self.F5.inverso(3)), 2)
        self.assertEqual(int(self.F5.opuesto(1)), 4)

    def test_f4(self):
        # x² = x + 1 con el módulo x² + x + 1
        self.assertEqual(self.F4.modulus, (1, 1, 1))
        self.assertEqual(int(self.F4.producto(2, 2)), 3)
        self.assertEqual(int(self.F4.suma(2, 3)), 1)
        self.assertEqual(int(self.F4.inverso(2)), 3)

    def test_modulo_f9(self):
        self.assertEqual(self.F9.modulus, (1, 0, 1))
        self.assertEqual((self.F9.characteristic, self.F9.degree), (3, 2))

    def test_axiomas_de_cuerpo(self):
        for F in (self.F4, self.F9):
            for a in range(1, F.q):
                self.assertEqual(int(F.producto(a, F.inverso(a))), 1)
                self.assertEqual(int(F.suma(a, F.opuesto(a))), 0)
            for a, b, c in itertools.product(range(F.q), repeat=3):
                izquierda = F.producto(a, F.suma(b, c))
                derecha = F.suma(F.producto(a, b), F.producto(a, c))
                self.assertEqual(int(izquierda), int(derecha))

    def test_potencia_de_frobenius(self):
        for a in range(self.F9.q):
            self.assertEqual(self.F9.potencia(a, 9), a)

    def test_inmersion(self):
        self.assertEqual(list(make_field(2).embedding(self.F4)), [0, 1])
        inmersion = self.F4.embedding(self.F16)
        self.assertEqual(len(set(int(x) for x in inmersion)), 4)
        for a, b in itertools.product(range(4), repeat=2):
            self.assertEqual(int(inmersion[int(self.F4.producto(a, b))]),
                             int(self.F16.producto(inmersion[a], inmersion[b])))
            self.assertEqual(int(inmersion[int(self.F4.suma(a, b))]),
                             int(self.F16.suma(inmersion[a], inmersion[b])))

    def test_inmersion_invalida(self):
        with self.assertRaises(ErrorValidacion):
            self.F4.embedding(self.F9)
        with self.assertRaises(ErrorValidacion):
            self.F4.embedding(make_field(2, 3))

    def test_ordenes(self):
        self.assertEqual(factorizar_potencia_prima(8), (2, 3))
        self.assertEqual(factorizar_potencia_prima(7), (7, 1))
        with self.assertRaises(ErrorValidacion):
            make_field_of_order(6)
        with self.assertRaises(ErrorValidacion):
            make_field(4)

    def test_limite_de_cuerpo(self):
        with self.assertRaises(ErrorLimite) as ctx:
            make_field(2, 20, cap=1000)
        self.assertEqual(ctx.exception.limite, 1000)


class TestAlgebraLineal(unittest.TestCase):
    """Rango, núcleo e inversa sobre F_q"""

    @classmethod
    def setUpClass(cls):
        cls.F3 = make_field(3)
        cls.F5 = make_field(5)
        cls.F4 = make_field(2, 2)

    def test_rango(self):
        self.assertEqual(mat_rank(self.F3, matriz(self.F3, [[1, 2], [2, 1]])), 1)
        self.assertEqual(mat_rank(self.F5, matriz(self.F5, [[1, 2], [2, 1]])), 2)
        self.assertEqual(mat_rank(self.F5, matriz(self.F5, [], cols=3)), 0)

    def test_matriz_fuera_del_cuerpo(self):
        with self.assertRaises(ErrorValidacion):
            matriz(self.F3, [[0, 3]])

    def test_inversa(self):
        m = matriz(self.F5, [[1, 1], [0, 1]])
        np.testing.assert_array_equal(mat_inverse(self.F5, m), [[1, 4], [0, 1]])
        with self.assertRaises(ErrorValidacion):
            mat_inverse(self.F5, matriz(self.F5, [[1, 2], [2, 4]]))

    def test_inversa_en_extension(self):
        m = matriz(self.F4, [[2, 1], [0, 3]])
        np.testing.assert_array_equal(mat_mul(self.F4, m, mat_inverse(self.F4, m)), identidad(2))

    def test_nucleo(self):
        sistema = matriz(self.F5, [[1, 1, 0], [0, 1, 1]])
        base = solve_homogeneous(self.F5, sistema)
        self.assertEqual(len(base), 1)
        self.assertFalse(np.any(mat_mul(self.F5, sistema, base[0][:, None])))

    def test_invertibles_lote(self):
        F2 = make_field(2)
        todas = np.array([np.array(c).reshape(2, 2) for c in itertools.product(range(2), repeat=4)])
        self.assertEqual(int(invertibles_lote(F2, todas).sum()), 6)
        todas3 = np.array([np.array(c).reshape(2, 2) for c in itertools.product(range(3), repeat=4)])
        self.assertEqual(int(invertibles_lote(self.F3, todas3).sum()), 48)


class TestRacionales(unittest.TestCase):

    def test_fraccion_a_texto(self):
        self.assertEqual(fraccion_a_texto(Fraction(3, 6)), '1/2')
        self.assertEqual(fraccion_a_texto(2), '2/1')
        self.assertEqual(fraccion_a_texto(Fraction(-1, 3)), '-1/3')

    def test_inversa_racional(self):
        self.assertEqual(inversa_racional([[2, 1], [1, 1]]), [[1, -1], [-1, 2]])
        self.assertEqual(inversa_racional([[2]]), [[Fraction(1, 2)]])


if __name__ == '__main__':
    unittest.main()
