"""
Polinomios de Kac a partir de conteos por cuerpo.

Las muestras A_d(q) se interpolan con grado creciente hasta que el
interpolante reproduce al menos dos puntos sobrantes; los coeficientes
deben ser enteros.
"""

import logging
from dataclasses import dataclass, field as campo_dc
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from algebra.cuerpos import Field, make_field_of_order
from algebra.enumeracion import count_abs_indec, sobre_cuerpo, vectores_hasta
from algebra.errores import ErrorIndeterminado, ErrorIntegralidad, ErrorValidacion
from algebra.presentaciones import (
    CANONICA, SQUID, AlgebraPresentation, build_presentation, extend_presentation
)
from algebra.reticulo import psi_inverse
from algebra.series import recover_A_from_nil
from algebra.torsion import Side, indec_side
from utils.log_manager import log_execution_time

logger = logging.getLogger(__name__)

CONTEO_DIRECTO = 'direct-count'
INVERSION_NIL = 'nil-inversion'

# Puntos sobrantes que deben confirmar el interpolante
CONFIRMACIONES = 2


@dataclass(frozen=True)
class KacSample:
    q: int
    value: int
    provenance: str = CONTEO_DIRECTO

    def __post_init__(self):
        if self.value < 0:
            raise ErrorValidacion(f"Muestra negativa A({self.q}) = {self.value}", campo='value')

    def to_dict(self):
        return {'q': self.q, 'value': self.value, 'provenance': self.provenance}


@dataclass(frozen=True)
class KacPolynomial:
    """Coeficientes enteros, del término independiente hacia arriba."""
    coefficients: Tuple[int, ...]
    dim: Tuple[int, ...] = ()
    algebra: Dict = campo_dc(default_factory=dict, compare=False, hash=False)

    def __call__(self, x: int) -> int:
        total = 0
        for c in reversed(self.coefficients):
            total = total * x + c
        return total

    @property
    def grado(self) -> int:
        return len(self.coefficients) - 1

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    def to_dict(self):
        return {'dim': list(self.dim), 'polynomial': list(self.coefficients), **self.algebra}

    def __str__(self):
        terminos = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                terminos.append(str(c))
            else:
                base = 'q' if k == 1 else f'q^{k}'
                terminos.append(base if c == 1 else f"{c}{base}")
        return ' + '.join(reversed(terminos)) or '0'


def _multiplicar(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    producto = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            producto[i + j] += x * y
    return producto


def _lagrange(puntos: Sequence[Tuple[int, int]]) -> List[Fraction]:
    """Coeficientes del polinomio de grado < len(puntos) que pasa por los puntos."""
    coefs = [Fraction(0)] * len(puntos)
    for i, (xi, yi) in enumerate(puntos):
        base = [Fraction(1)]
        denominador = Fraction(1)
        for j, (xj, _) in enumerate(puntos):
            if j != i:
                base = _multiplicar(base, [Fraction(-xj), Fraction(1)])
                denominador *= xi - xj
        for k, c in enumerate(base):
            coefs[k] += c * yi / denominador
    while len(coefs) > 1 and coefs[-1] == 0:
        coefs.pop()
    return coefs


def _evaluar(coefs: Sequence[Fraction], x: int) -> Fraction:
    total = Fraction(0)
    for c in reversed(coefs):
        total = total * x + c
    return total


@log_execution_time
def interpolate(samples: Sequence[KacSample], dim: Sequence[int] = (),
                algebra: Optional[Dict] = None) -> KacPolynomial:
    """
    Interpolación adaptativa: por los primeros k puntos para k = 1, 2, …
    hasta que los restantes (al menos dos) se reproducen exactamente.

    Raises:
        ErrorIndeterminado: si nunca quedan dos puntos sobrantes que confirmen
        ErrorIntegralidad: si el interpolante confirmado tiene coeficientes no enteros
    """
    muestras = sorted(samples, key=lambda s: s.q)
    qs = [s.q for s in muestras]
    if len(set(qs)) != len(qs):
        raise ErrorValidacion(f"Muestras con q repetido: {qs}", campo='samples')
    if len(muestras) < 2:
        raise ErrorIndeterminado(f"Se necesitan al menos 2 muestras, recibidas {len(muestras)}")

    puntos = [(s.q, s.value) for s in muestras]
    for k in range(1, len(puntos) - CONFIRMACIONES + 1):
        coefs = _lagrange(puntos[:k])
        if all(_evaluar(coefs, x) == y for x, y in puntos[k:]):
            if any(c.denominator != 1 for c in coefs):
                logger.error(f"Violación de integralidad en d = {tuple(dim)}: {coefs}")
                raise ErrorIntegralidad(
                    f"Coeficientes no enteros {[str(c) for c in coefs]} para d = {tuple(dim)}")
            poly = KacPolynomial(tuple(int(c) for c in coefs), tuple(dim), algebra or {})
            logger.debug(f"Interpolado d = {tuple(dim)}: {poly} con {len(puntos) - k} confirmaciones")
            return poly

    raise ErrorIndeterminado(
        f"Muestras insuficientes para d = {tuple(dim)}: ningún interpolante queda confirmado "
        f"por {CONFIRMACIONES} puntos sobrantes con q = {qs}")


def monitor_no_negatividad(poly: KacPolynomial) -> bool:
    """Coeficientes negativos se registran como hallazgo, no como error."""
    ok = poly.nonnegative()
    if not ok:
        logger.warning(f"Coeficiente negativo en A_{poly.dim} = {poly} (observación, no error)")
    return ok


# ---------------------------------------------------------------------------
# Muestras
# ---------------------------------------------------------------------------

def presentacion_en(kind: str, p: Sequence[int], lambdas: Sequence[int], q: int) -> AlgebraPresentation:
    """Presentación sobre F_q con λ leídos como índices de elemento de F_q."""
    return build_presentation(kind, p, lambdas, make_field_of_order(q))


def kac_samples(kind: str, p: Sequence[int], lambdas: Sequence[int], d: Sequence[int],
                fields: Sequence[int], provenance: str = CONTEO_DIRECTO, **opciones) -> List[KacSample]:
    """
    A_d(q) para cada q de `fields`, contado directamente o recuperado del
    logaritmo de la serie de pares nilpotentes.
    """
    if provenance not in (CONTEO_DIRECTO, INVERSION_NIL):
        raise ErrorValidacion(f"Procedencia desconocida: {provenance}", campo='provenance')
    muestras = []
    for q in fields:
        pres = presentacion_en(kind, p, lambdas, q)
        if provenance == INVERSION_NIL:
            valor = recover_A_from_nil(pres, d, **opciones)[pres.validar_dimension(d)]
        else:
            valor = count_abs_indec(pres, d, **opciones)
        muestras.append(KacSample(q, valor, provenance))
    return muestras


def kac_polynomial(kind: str, p: Sequence[int], lambdas: Sequence[int], d: Sequence[int],
                   fields: Sequence[int], confirm: Sequence[int] = (), provenance: str = CONTEO_DIRECTO,
                   **opciones) -> Dict:
    """
    Muestras, polinomio interpolado y comprobación en los cuerpos de confirmación.
    La confirmación siempre usa el conteo directo.
    """
    muestras = kac_samples(kind, p, lambdas, d, fields, provenance, **opciones)
    algebra = {'algebra': kind, 'p': list(p)}
    poly = interpolate(muestras, d, algebra)
    confirmaciones = []
    for q in confirm:
        valor = count_abs_indec(presentacion_en(kind, p, lambdas, q), d, **opciones)
        confirmaciones.append({'q': q, 'value': valor, 'polynomial': poly(q), 'ok': valor == poly(q)})
        if valor != poly(q):
            logger.warning(f"Confirmación fallida en q = {q}: {valor} != {poly(q)}")
    return {
        'dim': list(d),
        'samples': [[s.q, s.value] for s in muestras],
        'provenance': provenance,
        'polynomial': list(poly.coefficients),
        'nonnegative': monitor_no_negatividad(poly),
        'confirm': confirmaciones,
        'ok': all(c['ok'] for c in confirmaciones),
        'poly': poly
    }


def verify_extension(poly: KacPolynomial, pres: AlgebraPresentation, l: int,
                     field: Optional[Field] = None, **opciones) -> Dict:
    """A_d(q^l) contado sobre F_{q^l} frente al polinomio evaluado en q^l."""
    pres = sobre_cuerpo(pres, field)
    grande = extend_presentation(pres, l)
    directo = count_abs_indec(grande, poly.dim, **opciones)
    esperado = poly(grande.field.q)
    ok = directo == esperado
    if not ok:
        logger.warning(f"Extensión F_{grande.field.q}: conteo {directo} != polinomio {esperado}")
    return {'dim': list(poly.dim), 'q': grande.field.q, 'directo': directo, 'polinomio': esperado, 'ok': ok}


def verify_lambda_independence(kind: str, p: Sequence[int], d: Sequence[int], field: Field,
                               lambda_sets: Sequence[Sequence[int]], **opciones) -> Dict:
    """Mismo conteo para cada elección de λ (vacuo con N = 2)."""
    if len(p) == 2:
        return {'dim': list(d), 'q': field.q, 'ok': True, 'vacuo': True, 'conteos': []}
    conteos = []
    for lambdas in lambda_sets:
        pres = build_presentation(kind, p, lambdas, field)
        conteos.append({'lambda': list(lambdas), 'value': count_abs_indec(pres, d, **opciones)})
    ok = len({c['value'] for c in conteos}) <= 1
    if not ok:
        logger.warning(f"Dependencia de λ para {kind} {tuple(p)}, d = {tuple(d)}: {conteos}")
    return {'dim': list(d), 'q': field.q, 'ok': ok, 'vacuo': False, 'conteos': conteos}


def kac_table(kind: str, p: Sequence[int], lambdas: Sequence[int], bound: Sequence[int],
              fields: Sequence[int], provenance: str = CONTEO_DIRECTO,
              **opciones) -> pd.DataFrame:
    """
    Una fila por d ≤ bound no nulo: muestras, coeficientes, lado y no negatividad.
    Las dimensiones sin muestras suficientes quedan con polinomio vacío.
    """
    filas = []
    for d in vectores_hasta(bound):
        muestras = kac_samples(kind, p, lambdas, d, fields, provenance, **opciones)
        fila = {'dim': ','.join(str(x) for x in d)}
        fila.update({f'A({s.q})': s.value for s in muestras})
        try:
            poly = interpolate(muestras, d)
            fila['polynomial'] = ' '.join(str(c) for c in poly.coefficients)
            fila['nonnegative'] = monitor_no_negatividad(poly)
        except ErrorIndeterminado:
            fila['polynomial'] = ''
            fila['nonnegative'] = None
        if any(s.value for s in muestras):
            pres = presentacion_en(kind, p, lambdas, fields[0])
            fila['side'] = str(indec_side(psi_inverse(pres, d)))
        else:
            fila['side'] = ''
        filas.append(fila)
    return pd.DataFrame(filas)


def cross_algebra_check(p: Sequence[int], lambdas: Sequence[int], bound: Sequence[int],
                        fields: Sequence[int], **opciones) -> Dict:
    """
    Empareja d canónico y d squid con la misma clase ψ, del lado T en ambos,
    y compara sus conteos muestra a muestra. Informativo.
    """
    q0 = fields[0]
    canonica = presentacion_en(CANONICA, p, lambdas, q0)
    squid = presentacion_en(SQUID, p, lambdas, q0)

    def clases_T(pres):
        clases = {}
        for d in vectores_hasta(bound):
            clase = psi_inverse(pres, d)
            try:
                if indec_side(clase) == Side.T:
                    clases[d] = clase
            except ErrorValidacion:
                continue
        return clases

    clases_squid = clases_T(squid)
    parejas = []
    for d_can, clase in clases_T(canonica).items():
        for d_sq, otra in clases_squid.items():
            if otra != clase:
                continue
            valores = []
            for q in fields:
                a = count_abs_indec(presentacion_en(CANONICA, p, lambdas, q), d_can, **opciones)
                b = count_abs_indec(presentacion_en(SQUID, p, lambdas, q), d_sq, **opciones)
                valores.append({'q': q, 'canonical': a, 'squid': b})
            coinciden = all(v['canonical'] == v['squid'] for v in valores)
            if not coinciden:
                logger.info(f"Clase {clase.to_dict()}: canónica {d_can} y squid {d_sq} difieren")
            parejas.append({'clase': clase.to_dict(), 'canonical': list(d_can), 'squid': list(d_sq),
                            'valores': valores, 'coinciden': coinciden})
    return {'p': list(p), 'bound': list(bound), 'parejas': parejas,
            'coinciden': all(x['coinciden'] for x in parejas)}


__all__ = [
    'CONTEO_DIRECTO',
    'INVERSION_NIL',
    'KacSample',
    'KacPolynomial',
    'interpolate',
    'monitor_no_negatividad',
    'presentacion_en',
    'kac_samples',
    'kac_polynomial',
    'verify_extension',
    'verify_lambda_independence',
    'kac_table',
    'cross_algebra_check'
]
