"""
Par de torsión (T, F) inducido por el tilting.

Cada módulo indescomponible cae en T o en F[1] según la posición de su
clase ψ en el retículo: rango positivo, o rango nulo con grado positivo,
es T; lo opuesto es F[1]. Con esta clasificación se obtienen la división
canónica M ≅ M^(1) ⊕ M^(2), los volúmenes bigraduados y las identidades
de partición y factorización.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.cuerpos import Field, fraccion_a_texto
from algebra.enumeracion import (
    LADOS, count_abs_indec, decompose, gl_order, resumen_conteo, sobre_cuerpo, stack_volume,
    vectores_hasta
)
from algebra.errores import ErrorValidacion
from algebra.presentaciones import AlgebraPresentation, Representation, etiqueta_vertice
from algebra.reticulo import KClass, degree, euler_mod, psi_inverse, rank, simple_classes

logger = logging.getLogger(__name__)


class Side(Enum):
    T = 'T'
    FShift = 'F[1]'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BigradedVolume:
    d1: Tuple[int, ...]
    d2: Tuple[int, ...]
    value: Fraction

    def to_dict(self):
        return {'d1': list(self.d1), 'd2': list(self.d2), 'value': fraccion_a_texto(self.value)}


def indec_side(c: KClass) -> Side:
    """
    Lado de la clase de un indescomponible.

    Raises:
        ErrorValidacion: clase nula, o de rango y grado nulos (inclasificable)
    """
    if c.is_zero():
        raise ErrorValidacion("La clase nula no tiene lado", campo='clase')
    r = rank(c)
    if r > 0:
        return Side.T
    if r < 0:
        return Side.FShift
    g = degree(c)
    if g > 0:
        return Side.T
    if g < 0:
        return Side.FShift
    raise ErrorValidacion(f"Clase inclasificable {c.to_dict()}: rango y grado nulos", campo='clase')


def _sumar(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(int(x) + int(y) for x, y in zip(a, b))


def split_dims(pres: AlgebraPresentation, M: Representation, cap: Optional[int] = None,
               cache: Optional[Dict[Tuple[int, ...], Side]] = None) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    (d1, d2): dimensiones de la parte en F[1] y de la parte en T.

    Args:
        cache: lados ya calculados por vector de dimensión
    """
    cache = {} if cache is None else cache
    d1 = d2 = (0,) * len(M.dim)
    for X in decompose(M, cap):
        if X.dim not in cache:
            cache[X.dim] = indec_side(psi_inverse(pres, X.dim))
        if cache[X.dim] == Side.T:
            d2 = _sumar(d2, X.dim)
        else:
            d1 = _sumar(d1, X.dim)
    return d1, d2


def bigraded_volume(pres: AlgebraPresentation, d1: Sequence[int], d2: Sequence[int],
                    field: Optional[Field] = None, ambiente: Optional[Sequence[int]] = None,
                    **opciones) -> BigradedVolume:
    """
    #{M de dimensión d1 + d2 con split_dims(M) = (d1, d2)} / |GL_{d1+d2}|.

    Raises:
        ErrorValidacion: si se indica una dimensión ambiente distinta de d1 + d2
    """
    pres = sobre_cuerpo(pres, field)
    d1 = pres.validar_dimension(d1)
    d2 = pres.validar_dimension(d2)
    d = _sumar(d1, d2)
    if ambiente is not None and pres.validar_dimension(ambiente) != d:
        raise ErrorValidacion(f"d1 + d2 = {d} no coincide con la dimensión {tuple(ambiente)}",
                              campo='dim')
    cuenta = resumen_conteo(pres, d, (LADOS,), **opciones).divisiones.get((d1, d2), 0)
    return BigradedVolume(d1, d2, Fraction(cuenta, gl_order(d, pres.field.q)))


def partition_check(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                    **opciones) -> Dict:
    """Σ_{(d1,d2)} vol(Rep_{d1,d2}) = vol(Rep_d)."""
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    resumen = resumen_conteo(pres, d, (LADOS,), **opciones)
    orden = gl_order(d, pres.field.q)
    suma = Fraction(sum(resumen.divisiones.values()), orden)
    total = Fraction(resumen.soluciones, orden)
    ok = suma == total
    if not ok:
        logger.warning(f"Partición fallida para d = {d}: {suma} != {total}")
    return {
        'dim': list(d),
        'q': pres.field.q,
        'ok': ok,
        'suma': fraccion_a_texto(suma),
        'stack_volume': fraccion_a_texto(total),
        'divisiones': [{'d1': list(d1), 'd2': list(d2), 'value': fraccion_a_texto(Fraction(n, orden))}
                       for (d1, d2), n in sorted(resumen.divisiones.items())]
    }


def check_factorization(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                        **opciones) -> Dict:
    """
    Para cada d1 + d2 = d comprueba
    vol(d1, d2) = q^{−⟨d2, d1⟩}·vol(d1, 0)·vol(0, d2)
    y que la suma de los segundos miembros es vol(Rep_d).
    """
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    q = pres.field.q
    cero = (0,) * len(d)

    pares, fallo = [], None
    suma = Fraction(0)
    for d1 in vectores_hasta(d, incluir_cero=True):
        d2 = tuple(x - y for x, y in zip(d, d1))
        izquierda = bigraded_volume(pres, d1, d2, **opciones).value
        solo_F = bigraded_volume(pres, d1, cero, **opciones).value
        solo_T = bigraded_volume(pres, cero, d2, **opciones).value
        exponente = -euler_mod(pres, d2, d1)
        derecha = Fraction(q) ** exponente * solo_F * solo_T
        suma += derecha
        ok = izquierda == derecha
        fila = {
            'd1': list(d1), 'd2': list(d2),
            'bigraded': fraccion_a_texto(izquierda),
            'vol_F': fraccion_a_texto(solo_F),
            'vol_T': fraccion_a_texto(solo_T),
            'exponente': exponente,
            'producto': fraccion_a_texto(derecha),
            'ok': ok
        }
        pares.append(fila)
        if not ok and fallo is None:
            fallo = fila
            logger.warning(f"Factorización fallida en (d1, d2) = ({d1}, {d2}): {izquierda} != {derecha}")

    total = stack_volume(pres, d, **opciones)
    suma_ok = suma == total
    if not suma_ok:
        logger.warning(f"Suma de factorizaciones {suma} distinta de vol(Rep_d) = {total}")
    return {
        'dim': list(d),
        'q': q,
        'ok': fallo is None and suma_ok,
        'suma': fraccion_a_texto(suma),
        'stack_volume': fraccion_a_texto(total),
        'pares': pares,
        'fallo': fallo
    }


def side_report(pres: AlgebraPresentation, bound: Sequence[int], field: Optional[Field] = None,
                **opciones) -> List[Dict]:
    """
    Clase ψ y lado de cada simple de vértice y de cada d ≤ bound que
    admite absolutamente indescomponibles.
    """
    pres = sobre_cuerpo(pres, field)
    bound = pres.validar_dimension(bound)
    filas = []
    for v, clase in simple_classes(pres).items():
        filas.append({
            'tipo': 'simple',
            'vertice': etiqueta_vertice(v),
            'clase': clase.to_dict(),
            'rank': rank(clase),
            'degree': degree(clase),
            'side': str(indec_side(clase))
        })
    for d in vectores_hasta(bound):
        total = count_abs_indec(pres, d, **opciones)
        if total == 0:
            continue
        clase = psi_inverse(pres, d)
        filas.append({
            'tipo': 'dim',
            'dim': list(d),
            'clase': clase.to_dict(),
            'rank': rank(clase),
            'degree': degree(clase),
            'side': str(indec_side(clase)),
            'A': total
        })
    return filas


__all__ = [
    'Side',
    'BigradedVolume',
    'indec_side',
    'split_dims',
    'bigraded_volume',
    'partition_check',
    'check_factorization',
    'side_report'
]
