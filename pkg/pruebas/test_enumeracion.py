"""
Pruebas de la enumeración de representaciones y de los conteos exactos.
"""

import unittest
from collections import Counter
from fractions import Fraction

import numpy as np

from algebra.cuerpos import make_field, matriz
from algebra.enumeracion import (
    JordanType, count_abs_indec, count_abs_indec_by_side, count_solutions, contar_epimorfismos, decompose,
    end_basis, es_absolutamente_local, gl_order, is_abs_indec, is_indec, iterate_solutions, jordan_type,
    limpiar_cache, nil_pairs_by_type, nil_volume, resumen_conteo, stack_volume, unit_count, vectores_hasta
)
from algebra.errores import ErrorLimite, ErrorValidacion
from algebra.presentaciones import CANONICA, SQUID, Representation, build_presentation, zero_representation

DELTA = (1, 1, 1, 1)


class TestUtilidades(unittest.TestCase):

    def test_orden_de_gl(self):
        self.assertEqual(gl_order((2,), 2), 6)
        self.assertEqual(gl_order((1, 1), 3), 4)
        self.assertEqual(gl_order((0, 0), 5), 1)
        self.assertEqual(gl_order((2, 1), 3), 48 * 2)

    def test_vectores_hasta(self):
        self.assertEqual(vectores_hasta((1, 1)), [(0, 1), (1, 0), (1, 1)])
        self.assertEqual(len(vectores_hasta((2, 1), incluir_cero=True)), 6)

    def test_tipo_de_jordan(self):
        self.assertEqual(JordanType(((1, 0), (0, 0))).partes, ((1, 0),))
        self.assertEqual(JordanType(((1, 0), (0, 1))).dimension(), (1, 2))
        self.assertEqual(JordanType(()).dimension(2), (0, 0))
        self.assertEqual(str(JordanType(())), '∅')
        with self.assertRaises(ErrorValidacion):
            JordanType(((-1, 0),))


class TestSoluciones(unittest.TestCase):
    """Recorrido del espacio de tuplas"""

    @classmethod
    def setUpClass(cls):
        cls.F2 = make_field(2)
        cls.can22 = build_presentation(CANONICA, (2, 2), (), cls.F2)
        cls.sq22 = build_presentation(SQUID, (2, 2), (), cls.F2)

    def setUp(self):
        limpiar_cache()

    def test_canonica_sin_relaciones(self):
        self.assertEqual(count_solutions(self.can22, DELTA), 16)
        self.assertEqual(len(list(iterate_solutions(self.can22, DELTA))), 16)

    def test_squid(self):
        self.assertEqual(count_solutions(self.sq22, DELTA), 9)
        soluciones = list(iterate_solutions(self.sq22, DELTA))
        self.assertEqual(len({M.clave() for M in soluciones}), 9)

    def test_orden_lexicografico(self):
        primera = next(iterate_solutions(self.can22, DELTA))
        self.assertFalse(any(np.any(m) for m in primera.matrices))

    def test_extension_de_escalares(self):
        F4 = make_field(2, 2)
        self.assertEqual(count_solutions(self.can22, DELTA, field=F4), 4 ** 4)
        with self.assertRaises(ErrorValidacion):
            count_solutions(self.can22, DELTA, field=make_field(3))

    def test_limite_de_tuplas(self):
        with self.assertRaises(ErrorLimite) as ctx:
            count_solutions(self.can22, DELTA, cap=10)
        self.assertEqual(ctx.exception.exponente, 4)

    def test_volumen(self):
        self.assertEqual(stack_volume(self.can22, DELTA), Fraction(16))
        self.assertEqual(stack_volume(self.can22, (2, 0, 0, 0)), Fraction(1, 6))

    def test_trabajadores_no_cambian_totales(self):
        uno = resumen_conteo(self.can22, (2, 1, 1, 1), ('abs', 'nil'), workers=1)
        limpiar_cache()
        dos = resumen_conteo(self.can22, (2, 1, 1, 1), ('abs', 'nil'), workers=2)
        self.assertEqual(uno, dos)

    def test_tareas_desconocidas(self):
        with self.assertRaises(ErrorValidacion):
            resumen_conteo(self.can22, DELTA, ('orbitas',))


class TestEndomorfismos(unittest.TestCase):
    """Anillo de endomorfismos, indescomponibilidad y descomposición"""

    @classmethod
    def setUpClass(cls):
        cls.F2 = make_field(2)
        cls.F3 = make_field(3)
        cls.can22 = build_presentation(CANONICA, (2, 2), (), cls.F2)
        unos = tuple(np.ones((1, 1), dtype=np.int64) for _ in range(4))
        cls.banda = Representation(cls.can22, DELTA, unos)
        cls.nula = zero_representation(cls.can22, DELTA)

    def test_banda(self):
        E = end_basis(self.banda)
        self.assertEqual(E.dim, 1)
        self.assertEqual(unit_count(E), 1)
        self.assertTrue(is_abs_indec(E))
        self.assertTrue(is_indec(E))
        self.assertTrue(es_absolutamente_local(E))
        self.assertEqual(decompose(self.banda), [self.banda])

    def test_suma_de_simples(self):
        E = end_basis(self.nula)
        self.assertEqual(E.dim, 4)
        self.assertEqual(unit_count(E), 1)
        self.assertFalse(is_abs_indec(E))
        self.assertFalse(is_indec(E))
        self.assertFalse(es_absolutamente_local(E))
        sumandos = decompose(self.nula)
        self.assertEqual(sorted(M.dim for M in sumandos),
                         [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)])

    def test_matrices_2x2(self):
        M = zero_representation(self.can22, (2, 0, 0, 0))
        E = end_basis(M)
        self.assertEqual(E.dim, 4)
        self.assertEqual(unit_count(E), 6)
        self.assertEqual(len(decompose(M)), 2)

    def test_prueba_estructural_coincide(self):
        for kind, d in ((CANONICA, DELTA), (SQUID, DELTA), (CANONICA, (2, 1, 1, 1))):
            pres = build_presentation(kind, (2, 2), (), self.F2)
            for M in iterate_solutions(pres, d):
                E = end_basis(M)
                self.assertEqual(es_absolutamente_local(E), is_abs_indec(E), M.to_dict())

    def test_limite_de_endomorfismos(self):
        E = end_basis(self.nula)
        with self.assertRaises(ErrorLimite):
            unit_count(E, cap=8)

    def test_epimorfismos(self):
        S0 = zero_representation(self.can22, (1, 0, 0, 0))
        self.assertEqual(contar_epimorfismos(S0, S0), 1)
        pres3 = build_presentation(CANONICA, (2, 2), (), self.F3)
        self.assertEqual(contar_epimorfismos(zero_representation(pres3, (1, 0, 0, 0)),
                                             zero_representation(pres3, (1, 0, 0, 0))), 2)

    def test_tipo_de_jordan_de_un_endomorfismo(self):
        M = zero_representation(self.can22, (2, 0, 0, 0))
        vacia = np.zeros((0, 0), dtype=np.int64)
        theta = (matriz(self.F2, [[0, 1], [0, 0]]), vacia, vacia, vacia)
        tipo = jordan_type(M, theta)
        self.assertEqual(tipo, JordanType(((0, 0, 0, 0), (1, 0, 0, 0))))
        self.assertEqual(tipo.dimension(), (2, 0, 0, 0))

    def test_tipo_de_jordan_invalido(self):
        M = zero_representation(self.can22, (2, 0, 0, 0))
        vacia = np.zeros((0, 0), dtype=np.int64)
        with self.assertRaises(ErrorValidacion):
            jordan_type(M, (matriz(self.F2, [[1, 0], [0, 0]]), vacia, vacia, vacia))
        with self.assertRaises(ErrorValidacion):
            jordan_type(self.banda, (matriz(self.F2, [[1]]), matriz(self.F2, [[0]]),
                                     matriz(self.F2, [[0]]), matriz(self.F2, [[0]])))


class TestConteos(unittest.TestCase):
    """Conteos de absolutamente indescomponibles y volúmenes nilpotentes"""

    @classmethod
    def setUpClass(cls):
        cls.F2 = make_field(2)
        cls.F3 = make_field(3)

    def setUp(self):
        limpiar_cache()

    def test_raiz_imaginaria_canonica(self):
        # A_δ = q + 3
        for F, esperado in ((self.F2, 5), (self.F3, 6)):
            pres = build_presentation(CANONICA, (2, 2), (), F)
            self.assertEqual(count_abs_indec(pres, DELTA), esperado)

    def test_squid_sin_indescomponibles(self):
        pres = build_presentation(SQUID, (2, 2), (), self.F2)
        self.assertEqual(count_abs_indec(pres, DELTA), 0)
        self.assertEqual(count_abs_indec_by_side(pres, DELTA), (0, 0))

    def test_simples(self):
        pres = build_presentation(CANONICA, (2, 2), (), self.F3)
        for d in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)):
            self.assertEqual(count_abs_indec(pres, d), 1)
        self.assertEqual(count_abs_indec(pres, (2, 0, 0, 0)), 0)

    def test_volumen_nilpotente_de_2s(self):
        for F in (self.F2, self.F3):
            q = F.q
            pres = build_presentation(CANONICA, (2, 2), (), F)
            self.assertEqual(nil_volume(pres, (2, 0, 0, 0)), Fraction(q, (q - 1) ** 2 * (q + 1)))

    def test_pares_por_tipo(self):
        pres = build_presentation(CANONICA, (2, 2), (), self.F2)
        tipos = nil_pairs_by_type(pres, (2, 0, 0, 0))
        self.assertEqual(tipos, Counter({JordanType(((2, 0, 0, 0),)): 1,
                                         JordanType(((0, 0, 0, 0), (1, 0, 0, 0))): 3}))

    def test_particion_por_lados(self):
        pres = build_presentation(CANONICA, (2, 2), (), self.F2)
        self.assertEqual(count_abs_indec_by_side(pres, (1, 0, 0, 0)), (1, 0))
        self.assertEqual(count_abs_indec_by_side(pres, (0, 1, 0, 0)), (0, 1))
        self.assertEqual(count_abs_indec_by_side(pres, DELTA), (5, 0))
        for d in vectores_hasta(DELTA):
            a_T, a_F = count_abs_indec_by_side(pres, d)
            self.assertEqual(a_T + a_F, count_abs_indec(pres, d), d)
            self.assertGreaterEqual(min(a_T, a_F), 0)
            self.assertEqual(a_T * a_F, 0, d)

    def test_cache_distingue_limite_de_endomorfismos(self):
        pres = build_presentation(CANONICA, (2, 2), (), self.F2)
        self.assertEqual(count_abs_indec(pres, (2, 0, 0, 0)), 0)
        with self.assertRaises(ErrorLimite):
            count_abs_indec(pres, (2, 0, 0, 0), cap_end=8)
        self.assertEqual(count_abs_indec(pres, (2, 0, 0, 0), cap_end=16), 0)


if __name__ == '__main__':
    unittest.main()
