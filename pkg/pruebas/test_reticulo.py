"""
Pruebas del retículo de clases: forma de Euler, invariantes y sumandos del tilting.
"""

import itertools
import math
import unittest
from fractions import Fraction

import numpy as np

from algebra.cuerpos import make_field
from algebra.errores import ErrorValidacion
from algebra.presentaciones import CANONICA, SQUID, build_presentation
from algebra.reticulo import (
    KClass, LatticeContext, cartan_matrix, degree, euler, euler_mod, euler_ringel, parse_kclass,
    psi_inverse, rank, simple_classes, slope, sym, tilting_compatibility, tilting_summand_classes
)


class TestFormaDeEuler(unittest.TestCase):
    """Tabla de generadores y extensión bilineal"""

    @classmethod
    def setUpClass(cls):
        cls.ctx = LatticeContext((2, 3))
        cls.e = cls.ctx.e()
        cls.delta = cls.ctx.delta()

    def test_valores_basicos(self):
        self.assertEqual(euler(self.e, self.e), 1)
        self.assertEqual(euler(self.e, self.delta), 1)
        self.assertEqual(euler(self.delta, self.e), -1)
        self.assertEqual(euler(self.delta, self.delta), 0)

    def test_generadores_de_brazo(self):
        e11 = self.ctx.generator(1, 1)
        e10 = self.ctx.generator(1, 0)
        self.assertEqual(euler(e11, e11), 1)
        self.assertEqual(euler(e10, e11), -1)
        self.assertEqual(euler(e11, e10), -1)
        self.assertEqual(euler(self.e, e11), 1)
        self.assertEqual(euler(e10, self.e), -1)

    def test_suma_de_un_brazo_es_delta(self):
        for i, pi in enumerate(self.ctx.p, start=1):
            total = self.ctx.zero()
            for s in range(pi):
                total = total + self.ctx.generator(i, s)
            self.assertEqual(total, self.delta)

    def test_independiente_del_brazo(self):
        clases = [self.e, self.delta, self.ctx.generator(1, 1), self.ctx.generator(2, 2),
                  2 * self.e - self.ctx.generator(2, 1)]
        for x, y in itertools.product(clases, repeat=2):
            self.assertEqual(euler(x, y, brazo=0), euler(x, y, brazo=1))

    def test_simetrizada(self):
        self.assertEqual(sym(self.e, self.e), 2)
        self.assertEqual(sym(self.e, self.delta), 0)

    def test_generador_fuera_de_rango(self):
        with self.assertRaises(ErrorValidacion):
            self.ctx.generator(3, 0)

    def test_contextos_distintos(self):
        otro = LatticeContext((2, 2))
        with self.assertRaises(ErrorValidacion):
            euler(self.e, otro.e())


class TestInvariantes(unittest.TestCase):
    """κ, género, rango, grado y pendiente"""

    def test_kappa_y_genero(self):
        self.assertEqual(LatticeContext((2, 3)).kappa, -5)
        self.assertEqual(LatticeContext((2, 3)).genus, Fraction(-3, 2))
        self.assertEqual(LatticeContext((2, 2, 2)).kappa, -1)
        self.assertEqual(LatticeContext((2, 3, 6)).kappa, 0)
        self.assertEqual(LatticeContext((2, 3, 6)).genus, 1)
        self.assertEqual(LatticeContext((2, 2, 2, 2, 2)).genus, Fraction(3, 2))

    def test_pesos_invalidos(self):
        with self.assertRaises(ErrorValidacion):
            LatticeContext((2,))
        with self.assertRaises(ErrorValidacion):
            LatticeContext((1, 3))

    def test_rango_y_grado(self):
        ctx = LatticeContext((2, 3))
        self.assertEqual(rank(ctx.e()), 1)
        self.assertEqual(degree(ctx.e()), 0)
        self.assertEqual(degree(ctx.delta()), 6)
        self.assertEqual(degree(ctx.generator(1, 1)), 3)
        self.assertEqual(degree(ctx.generator(2, 1)), 2)

    def test_pendiente(self):
        ctx = LatticeContext((2, 3))
        self.assertEqual(slope(2 * ctx.e() + ctx.delta()), Fraction(3))
        self.assertEqual(slope(ctx.generator(1, 1)), math.inf)
        self.assertEqual(slope(-ctx.generator(1, 1)), -math.inf)
        with self.assertRaises(ErrorValidacion):
            slope(ctx.zero())


class TestLecturaDeClases(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.ctx = LatticeContext((2, 3))

    def test_expresion_compuesta(self):
        clase = parse_kclass(self.ctx, '2e - e_1_0 + delta')
        self.assertEqual(clase, KClass(self.ctx, 2, 0, ((1,), (0, 0))))

    def test_simbolos_sueltos(self):
        self.assertEqual(parse_kclass(self.ctx, 'e'), self.ctx.e())
        self.assertEqual(parse_kclass(self.ctx, 'δ'), self.ctx.delta())
        self.assertEqual(parse_kclass(self.ctx, '3 delta'), 3 * self.ctx.delta())

    def test_errores(self):
        for texto in ('', 'foo', 'e_3_0', 'e_1_2', 'e +'):
            with self.assertRaises(ErrorValidacion):
                parse_kclass(self.ctx, texto)

    def test_diccionario(self):
        clase = parse_kclass(self.ctx, 'e + e_2_1')
        self.assertEqual(KClass.from_dict(self.ctx, clase.to_dict()), clase)


class TestTilting(unittest.TestCase):
    """Compatibilidad entre la forma de Euler y la matriz de Cartan"""

    @classmethod
    def setUpClass(cls):
        F5 = make_field(5)
        cls.can22 = build_presentation(CANONICA, (2, 2), (), F5)
        cls.sq22 = build_presentation(SQUID, (2, 2), (), F5)
        cls.presentaciones = [
            cls.can22,
            cls.sq22,
            build_presentation(CANONICA, (2, 3), (), F5),
            build_presentation(CANONICA, (2, 2, 2), (2,), F5),
            build_presentation(SQUID, (2, 2, 2), (2,), F5),
            build_presentation(SQUID, (3, 2), (), F5),
        ]

    def test_cartan_canonica(self):
        np.testing.assert_array_equal(cartan_matrix(self.can22),
                                      [[1, 2, 1, 1], [0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 0, 1]])
        tres = self.presentaciones[3]
        self.assertEqual(int(cartan_matrix(tres)[0, 1]), 2)

    def test_cartan_squid(self):
        np.testing.assert_array_equal(cartan_matrix(self.sq22),
                                      [[1, 2, 1, 1], [0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]])

    def test_clases_de_tilting(self):
        ctx = LatticeContext((2, 2))
        clases = tilting_summand_classes(self.can22)
        self.assertEqual(clases[1], ctx.e() + ctx.delta())
        self.assertEqual(clases[(2, 1)], ctx.e() + ctx.generator(2, 0))
        squid = tilting_summand_classes(self.sq22)
        self.assertEqual(squid[(1, 1)], ctx.generator(1, 1))

    def test_compatibilidad(self):
        for pres in self.presentaciones:
            filas = tilting_compatibility(pres)
            self.assertEqual(len(filas), pres.n_vertices ** 2)
            self.assertTrue(all(f['ok'] for f in filas), pres.describir())

    def test_clases_simples(self):
        ctx = LatticeContext((2, 2))
        simples = simple_classes(self.can22)
        self.assertEqual(simples[0], ctx.e())
        self.assertEqual(simples[(1, 1)], ctx.generator(1, 0))
        self.assertEqual(simples[1], -ctx.e() - ctx.delta() + ctx.generator(1, 1) + ctx.generator(2, 1))
        self.assertEqual(psi_inverse(self.can22, (1, 1, 1, 1)), ctx.delta())

    def test_euler_por_carcaj(self):
        for pres in (self.can22, self.sq22):
            for d in itertools.product(range(2), repeat=4):
                for e in itertools.product(range(2), repeat=4):
                    self.assertEqual(euler_mod(pres, d, e), euler_ringel(pres, d, e), (d, e))

    def test_euler_ringel_con_relaciones(self):
        # S_(1,1) frente a S_0 en el squid: sólo contribuye la relación x_{1,1}·a
        self.assertEqual(euler_ringel(self.sq22, (0, 0, 1, 0), (1, 0, 0, 0)), 1)
        self.assertEqual(euler_ringel(self.can22, (0, 0, 1, 0), (1, 0, 0, 0)), -1)


if __name__ == '__main__':
    unittest.main()
