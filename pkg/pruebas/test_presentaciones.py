"""
Pruebas de las presentaciones canónica y squid y de sus representaciones.
"""

import unittest

import numpy as np

from algebra.cuerpos import identidad, make_field, matriz
from algebra.errores import ErrorValidacion
from algebra.presentaciones import (
    CANONICA, SQUID, Representation, WeightData, build_presentation, composite, conjugate,
    extend_presentation, hom_basis, rep_satisfies, zero_representation
)


def representacion(pres, d, valores):
    """Representación con una matriz por flecha a partir de listas."""
    matrices = []
    for a, filas in zip(pres.quiver.arrows, valores):
        matrices.append(matriz(pres.field, filas, cols=d[a.source]).reshape(d[a.target], d[a.source]))
    return Representation(pres, tuple(d), tuple(matrices))


class TestPesos(unittest.TestCase):
    """Validación de los datos de pesos"""

    @classmethod
    def setUpClass(cls):
        cls.F5 = make_field(5)

    def test_pesos_validos(self):
        w = WeightData((2, 3, 5), (2,), self.F5)
        self.assertEqual(w.n, 3)
        self.assertEqual(w.to_dict()['lambda'], [2])

    def test_pocos_pesos(self):
        with self.assertRaises(ErrorValidacion) as ctx:
            WeightData((2,), (), self.F5)
        self.assertEqual(ctx.exception.campo, 'p')

    def test_peso_menor_que_dos(self):
        with self.assertRaises(ErrorValidacion):
            WeightData((1, 2), (), self.F5)

    def test_numero_de_lambdas(self):
        with self.assertRaises(ErrorValidacion) as ctx:
            WeightData((2, 2, 2), (), self.F5)
        self.assertEqual(ctx.exception.campo, 'lambda')

    def test_lambda_nulo_o_fuera_del_cuerpo(self):
        with self.assertRaises(ErrorValidacion):
            WeightData((2, 2, 2), (0,), self.F5)
        with self.assertRaises(ErrorValidacion):
            WeightData((2, 2, 2), (5,), self.F5)

    def test_lambdas_repetidos(self):
        with self.assertRaises(ErrorValidacion) as ctx:
            WeightData((2, 2, 2, 2), (3, 3), self.F5)
        self.assertIn('distintos', str(ctx.exception))

    def test_extension_de_lambdas(self):
        F4 = make_field(2, 2)
        w = WeightData((2, 2, 2), (1,), make_field(2))
        self.assertEqual(w.extend_to(F4).lambdas, (1,))


class TestPresentaciones(unittest.TestCase):
    """Carcajes y relaciones de las dos familias"""

    @classmethod
    def setUpClass(cls):
        cls.F2 = make_field(2)
        cls.F5 = make_field(5)
        cls.can22 = build_presentation(CANONICA, (2, 2), (), cls.F2)
        cls.sq22 = build_presentation(SQUID, (2, 2), (), cls.F2)
        cls.can222 = build_presentation(CANONICA, (2, 2, 2), (2,), cls.F5)
        cls.sq222 = build_presentation(SQUID, (2, 2, 2), (2,), cls.F5)

    def test_vertices(self):
        self.assertEqual(self.can22.quiver.vertices, (0, 1, (1, 1), (2, 1)))
        self.assertEqual(self.sq222.quiver.vertices, (0, 1, (1, 1), (2, 1), (3, 1)))
        self.assertEqual(self.can22.describir()['vertices'], ['0', '1', '(1,1)', '(2,1)'])

    def test_flechas_y_relaciones(self):
        self.assertEqual((len(self.can22.quiver.arrows), len(self.can22.relations)), (4, 0))
        self.assertEqual((len(self.can222.quiver.arrows), len(self.can222.relations)), (6, 1))
        self.assertEqual((len(self.sq22.quiver.arrows), len(self.sq22.relations)), (4, 2))
        self.assertEqual((len(self.sq222.quiver.arrows), len(self.sq222.relations)), (5, 3))

    def test_pesos_mayores(self):
        pres = build_presentation(CANONICA, (2, 3), (), self.F2)
        self.assertEqual(pres.n_vertices, 5)
        self.assertEqual(len(pres.quiver.arrows), 5)
        squid = build_presentation(SQUID, (3, 3), (), self.F2)
        self.assertEqual(squid.n_vertices, 6)
        self.assertEqual(len(squid.quiver.arrows), 6)

    def test_tipo_desconocido(self):
        with self.assertRaises(ErrorValidacion) as ctx:
            build_presentation('hereditaria', (2, 2), (), self.F2)
        self.assertEqual(ctx.exception.campo, 'algebra')

    def test_validar_dimension(self):
        self.assertEqual(self.can22.validar_dimension([1, 1, 1, 1]), (1, 1, 1, 1))
        with self.assertRaises(ErrorValidacion):
            self.can22.validar_dimension((1, 1, 1))
        with self.assertRaises(ErrorValidacion):
            self.can22.validar_dimension((1, -1, 1, 1))

    def test_exponente(self):
        self.assertEqual(self.can22.exponente((1, 1, 1, 1)), 4)
        self.assertEqual(self.can22.exponente((2, 1, 1, 0)), 3)
        self.assertEqual(self.sq22.exponente((1, 2, 1, 0)), 6)

    def test_extension(self):
        grande = extend_presentation(self.can22, 2)
        self.assertEqual(grande.field.q, 4)
        self.assertIs(extend_presentation(self.can22, 1), self.can22)
        con_lambda = extend_presentation(build_presentation(CANONICA, (2, 2, 2), (1,), self.F2), 2)
        self.assertEqual(con_lambda.weight.lambdas, (1,))


class TestRepresentaciones(unittest.TestCase):
    """Relaciones, homomorfismos y conjugación"""

    @classmethod
    def setUpClass(cls):
        cls.F2 = make_field(2)
        cls.F5 = make_field(5)
        cls.can22 = build_presentation(CANONICA, (2, 2), (), cls.F2)
        cls.sq22 = build_presentation(SQUID, (2, 2), (), cls.F2)
        cls.can222 = build_presentation(CANONICA, (2, 2, 2), (2,), cls.F5)

    def test_representacion_nula(self):
        M = zero_representation(self.sq22, (1, 1, 1, 1))
        self.assertTrue(rep_satisfies(M))
        self.assertEqual(len(hom_basis(M, M)), 4)

    def test_forma_incorrecta(self):
        with self.assertRaises(ErrorValidacion):
            Representation(self.can22, (1, 1, 1, 1), tuple(np.zeros((2, 1), dtype=np.int64)
                                                          for _ in range(4)))

    def test_relaciones_squid(self):
        # flechas: a, b, x1,1, x2,1
        buena = representacion(self.sq22, (1, 1, 1, 1), [[[1]], [[1]], [[0]], [[0]]])
        mala = representacion(self.sq22, (1, 1, 1, 1), [[[1]], [[0]], [[1]], [[0]]])
        self.assertTrue(rep_satisfies(buena))
        self.assertFalse(rep_satisfies(mala))

    def test_relacion_canonica(self):
        # brazo_3 = brazo_1 − λ·brazo_2 con λ = 2 sobre F_5
        d = (1, 1, 1, 1, 1)
        valores = [[[1]], [[1]], [[1]], [[1]], [[1]], [[4]]]
        M = representacion(self.can222, d, valores)
        self.assertTrue(rep_satisfies(M))
        valores[5] = [[1]]
        self.assertFalse(rep_satisfies(representacion(self.can222, d, valores)))

    def test_composicion(self):
        M = representacion(self.can22, (1, 1, 1, 1), [[[1]], [[1]], [[1]], [[1]]])
        np.testing.assert_array_equal(composite(M, (0, 1)), [[1]])

    def test_endomorfismos_de_la_banda(self):
        M = representacion(self.can22, (1, 1, 1, 1), [[[1]], [[1]], [[1]], [[1]]])
        self.assertEqual(len(hom_basis(M, M)), 1)

    def test_endomorfismos_de_suma_directa(self):
        # Todas las flechas nulas: suma de cuatro simples
        M = zero_representation(self.can22, (1, 1, 1, 1))
        self.assertEqual(len(hom_basis(M, M)), 4)

    def test_homomorfismos_entre_simples(self):
        S0 = zero_representation(self.can22, (1, 0, 0, 0))
        S1 = zero_representation(self.can22, (0, 1, 0, 0))
        self.assertEqual(len(hom_basis(S0, S1)), 0)
        self.assertEqual(len(hom_basis(S0, S0)), 1)

    def test_conjugacion(self):
        F3 = make_field(3)
        pres = build_presentation(CANONICA, (2, 2), (), F3)
        M = representacion(pres, (1, 1, 1, 1), [[[1]], [[2]], [[1]], [[1]]])
        g = [matriz(F3, [[2]]), identidad(1), identidad(1), identidad(1)]
        N = conjugate(M, g)
        self.assertTrue(rep_satisfies(N))
        # Las flechas que salen de 0 se multiplican por g_0^{-1} = 2
        np.testing.assert_array_equal(N.matrices[0], [[2]])
        self.assertEqual(len(hom_basis(M, N)), 1)

    def test_extension_de_escalares(self):
        M = representacion(self.can22, (1, 1, 1, 1), [[[1]], [[1]], [[0]], [[1]]])
        grande = M.extend_to(2)
        self.assertEqual(grande.field.q, 4)
        self.assertEqual(grande.clave(), M.clave())
        self.assertEqual(grande.to_dict()['dim'], [1, 1, 1, 1])


if __name__ == '__main__':
    unittest.main()
