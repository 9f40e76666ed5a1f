"""
Pruebas de series graduadas, identidad exponencial y estratos de Jordan.
"""

import unittest
from fractions import Fraction

from algebra.cuerpos import make_field
from algebra.enumeracion import JordanType, limpiar_cache, nil_pairs_by_type
from algebra.errores import ErrorValidacion
from algebra.presentaciones import CANONICA, SQUID, build_presentation
from algebra.reticulo import LatticeContext
from algebra.series import (
    GradedSeries, chain_volume, kac_exponent_series, nil_exp_check, nil_series, rank_r,
    recover_A_from_nil, recovery_check, series_exp, series_log, stratum_check, volume_series
)

DELTA = (1, 1, 1, 1)
DOS_S0 = (2, 0, 0, 0)


class TestSeriesGraduadas(unittest.TestCase):

    def test_exponencial_de_z(self):
        z = GradedSeries((3,), {(1,): 1})
        e = series_exp(z)
        self.assertEqual([e[(k,)] for k in range(4)],
                         [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6)])

    def test_log_inversa_de_exp(self):
        s = GradedSeries((2, 1), {(1, 0): 1, (0, 1): Fraction(1, 3), (2, 1): 5})
        self.assertEqual(series_log(series_exp(s)), s)

    def test_truncacion(self):
        s = GradedSeries((1,), {(1,): 2, (2,): 7})
        self.assertEqual(s[(2,)], 0)
        self.assertEqual((s * s).coeficientes, {})

    def test_errores(self):
        with self.assertRaises(ErrorValidacion):
            series_exp(GradedSeries((1,), {(0,): 1}))
        with self.assertRaises(ErrorValidacion):
            series_log(GradedSeries((1,), {(1,): 1}))
        with self.assertRaises(ErrorValidacion):
            GradedSeries((1,)) + GradedSeries((2,))
        with self.assertRaises(ErrorValidacion):
            GradedSeries((1,), {(1, 0): 1})


class TestSeriesDeVolumenes(unittest.TestCase):
    """Volúmenes, identidad exponencial y recuperación de A"""

    @classmethod
    def setUpClass(cls):
        cls.F2 = make_field(2)
        cls.can22 = build_presentation(CANONICA, (2, 2), (), cls.F2)

    def setUp(self):
        limpiar_cache()

    def test_terminos_constantes(self):
        self.assertEqual(volume_series(self.can22, (1, 0, 0, 0)).constante(), 1)
        self.assertEqual(nil_series(self.can22, (1, 0, 0, 0)).constante(), 1)

    def test_serie_exponente(self):
        # Sólo S_0 con cota 2·S_0: A_{S0}(q) = 1 y l ∈ {1, 2}
        serie = kac_exponent_series(self.can22, DOS_S0)
        self.assertEqual(serie[(1, 0, 0, 0)], Fraction(1, 1))
        self.assertEqual(serie[DOS_S0], Fraction(1, 2 * 3))

    def test_identidad_exponencial_en_2s0(self):
        informe = nil_exp_check(self.can22, DOS_S0)
        self.assertTrue(informe['ok'])
        self.assertTrue(informe['ok_completo'])
        filas = {tuple(f['dim']): f for f in informe['coeficientes_T']}
        self.assertEqual(filas[DOS_S0]['lhs'], '2/3')

    def test_identidad_exponencial_en_delta(self):
        for kind in (CANONICA, SQUID):
            pres = build_presentation(kind, (2, 2), (), self.F2)
            informe = nil_exp_check(pres, DELTA)
            self.assertTrue(informe['ok'], kind)
            self.assertTrue(informe['ok_completo'], kind)

    def test_recuperacion(self):
        valores = recover_A_from_nil(self.can22, DELTA)
        self.assertEqual(valores[DELTA], 5)
        self.assertEqual(valores[(1, 1, 0, 0)], 0)
        informe = recovery_check(self.can22, DELTA)
        self.assertTrue(informe['ok'])
        self.assertEqual(len(informe['valores']), 15)

    def test_recuperacion_con_extension(self):
        self.assertEqual(recover_A_from_nil(self.can22, DOS_S0), {(1, 0, 0, 0): 1, DOS_S0: 0})


class TestEstratos(unittest.TestCase):
    """Estratos de Jordan y volúmenes de cadenas"""

    @classmethod
    def setUpClass(cls):
        cls.ctx = LatticeContext((2, 2))

    def setUp(self):
        limpiar_cache()

    def test_rank_r(self):
        e = self.ctx.e()
        self.assertEqual(rank_r([e, e]), -2)
        self.assertEqual(rank_r([e]), 0)
        self.assertEqual(rank_r([self.ctx.zero(), e]), -1)
        # ⟨e,δ⟩ = 1 y (e,δ) = 0
        self.assertEqual(rank_r([e, self.ctx.delta()]), 1)

    def test_estrato_con_partes_distintas(self):
        tipo = JordanType(((0, 0, 1, 0), (1, 0, 0, 0)))
        for q, lhs in ((2, '1/1'), (3, '1/4')):
            pres = build_presentation(CANONICA, (2, 2), (), make_field(q))
            informe = stratum_check(pres, (2, 0, 1, 0), tipo)
            self.assertTrue(informe['ok'], informe)
            self.assertEqual(informe['rank_r'], -1)
            self.assertEqual(informe['lhs'], lhs)
            self.assertEqual(informe['rhs'], lhs)

    def test_todos_los_estratos_de_varias_partes(self):
        for kind in (CANONICA, SQUID):
            for q in (2, 3):
                pres = build_presentation(kind, (2, 2), (), make_field(q))
                for d in ((2, 0, 1, 0), (2, 0, 1, 1)):
                    tipos = [t for t in nil_pairs_by_type(pres, d, solo_T=True) if len(t.partes) > 1]
                    if kind == CANONICA:
                        self.assertTrue(tipos, (d, q))
                    for tipo in tipos:
                        informe = stratum_check(pres, d, tipo)
                        self.assertTrue(informe['ok'], (kind, q, d, str(tipo), informe['lhs'], informe['rhs']))

    def test_estrato_regular(self):
        for q in (2, 3):
            pres = build_presentation(CANONICA, (2, 2), (), make_field(q))
            informe = stratum_check(pres, DOS_S0, JordanType(((0, 0, 0, 0), (1, 0, 0, 0))))
            self.assertTrue(informe['ok'])
            self.assertEqual(informe['rank_r'], -1)
            self.assertEqual(Fraction(informe['lhs']), Fraction(1, q * (q - 1)))

    def test_estrato_nulo(self):
        pres = build_presentation(CANONICA, (2, 2), (), make_field(3))
        informe = stratum_check(pres, DOS_S0, JordanType((DOS_S0,)))
        self.assertTrue(informe['ok'])
        self.assertEqual(informe['lhs'], '1/48')

    def test_volumen_de_cadenas(self):
        pres = build_presentation(CANONICA, (2, 2), (), make_field(3))
        self.assertEqual(chain_volume(pres, [(1, 0, 0, 0), (1, 0, 0, 0)]), Fraction(1, 2))

    def test_tipos_invalidos(self):
        pres = build_presentation(CANONICA, (2, 2), (), make_field(2))
        with self.assertRaises(ErrorValidacion):
            stratum_check(pres, DOS_S0, JordanType(((1, 0, 0, 0),)))
        with self.assertRaises(ErrorValidacion):
            stratum_check(pres, (0, 1, 0, 0), JordanType(((0, 1, 0, 0),)))


if __name__ == '__main__':
    unittest.main()
