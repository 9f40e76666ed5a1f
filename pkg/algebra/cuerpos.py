"""
Aritmética exacta en cuerpos finitos pequeños F_q y álgebra lineal exacta
sobre ellos y sobre los racionales.

Los elementos se representan por su índice 0..q-1: el vector de
coeficientes del polinomio en base a la característica (coeficiente de
grado k en la cifra k). Las matrices son arrays de numpy de enteros con
esos índices; las operaciones reciben el cuerpo explícitamente.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from algebra.errores import ErrorLimite, ErrorValidacion, ErrorInterno
from utils.config_manager import limite

logger = logging.getLogger(__name__)

# Por encima de este orden no se precalculan tablas de logaritmos
LIMITE_TABLAS = 4096


def es_primo(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def factorizar_potencia_prima(q: int) -> Tuple[int, int]:
    """Devuelve (p, r) con q = p^r, o lanza ErrorValidacion."""
    if q < 2:
        raise ErrorValidacion(f"{q} no es potencia de un primo", campo='q')
    p = next(k for k in range(2, q + 1) if q % k == 0)
    r, resto = 0, q
    while resto % p == 0:
        resto //= p
        r += 1
    if resto != 1:
        raise ErrorValidacion(f"{q} no es potencia de un primo", campo='q')
    return p, r


# ---------------------------------------------------------------------------
# Polinomios sobre F_p como listas de coeficientes (grado creciente)
# ---------------------------------------------------------------------------

def _resto(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    """Resto de a módulo el polinomio mónico m, con len(m) - 1 coeficientes."""
    a = [x % p for x in a]
    grado_m = len(m) - 1
    for k in range(len(a) - 1, grado_m - 1, -1):
        c = a[k]
        if c:
            base = k - grado_m
            for j in range(grado_m + 1):
                a[base + j] = (a[base + j] - c * m[j]) % p
    a = a[:grado_m]
    return a + [0] * (grado_m - len(a))


def _producto_modular(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _resto(prod, m, p)


def _es_irreducible(f: Sequence[int], p: int) -> bool:
    """Prueba exhaustiva: ningún mónico de grado 1..r/2 divide a f."""
    r = len(f) - 1
    for grado in range(1, r // 2 + 1):
        for coefs in itertools.product(range(p), repeat=grado):
            if not any(_resto(f, list(coefs) + [1], p)):
                return False
    return True


@lru_cache(maxsize=None)
def modulo_minimo(p: int, r: int) -> Tuple[int, ...]:
    """
    Polinomio mónico irreducible de grado r lexicográficamente mínimo
    (coeficientes de grado creciente comparados como tuplas).
    """
    for coefs in itertools.product(range(p), repeat=r):
        candidato = list(coefs) + [1]
        if _es_irreducible(candidato, p):
            return tuple(candidato)
    raise ErrorInterno(f"No existe irreducible de grado {r} sobre F_{p}")


# ---------------------------------------------------------------------------
# Cuerpo finito
# ---------------------------------------------------------------------------

class Field:
    """
    Cuerpo finito F_q con q = p^r.

    Inmutable tras la construcción; se comparte sólo en lectura entre
    procesos de trabajo. Las operaciones elementales aceptan escalares o
    arrays (con difusión de numpy) y devuelven arrays de enteros.
    """

    def __init__(self, characteristic: int, degree: int):
        self.characteristic = characteristic
        self.degree = degree
        self.q = characteristic ** degree
        self.modulus = modulo_minimo(characteristic, degree)
        self._potencias = np.array([characteristic ** k for k in range(degree)], dtype=np.int64)

        self._exp = None
        self._log = None
        if degree == 1:
            self._inversos = np.array(
                [0] + [pow(x, characteristic - 2, characteristic) for x in range(1, characteristic)],
                dtype=np.int64
            )
        elif self.q <= LIMITE_TABLAS:
            self._construir_tablas()

    # -- representación --------------------------------------------------

    def __repr__(self):
        return f"Field(F_{self.q})"

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.characteristic, self.degree) == (other.characteristic, other.degree))

    def __hash__(self):
        return hash(('Field', self.characteristic, self.degree))

    def to_dict(self):
        return {
            'characteristic': self.characteristic,
            'degree': self.degree,
            'modulus': list(self.modulus)
        }

    def elements(self) -> range:
        return range(self.q)

    def digitos(self, x: int) -> List[int]:
        """Coeficientes del polinomio que representa x."""
        return [(x // self.characteristic ** k) % self.characteristic for k in range(self.degree)]

    def desde_digitos(self, coefs: Sequence[int]) -> int:
        return sum((c % self.characteristic) * self.characteristic ** k for k, c in enumerate(coefs))

    # -- tablas ---------------------------------------------------------

    def _mult_escalar_poly(self, a: int, b: int) -> int:
        return self.desde_digitos(
            _producto_modular(self.digitos(a), self.digitos(b), self.modulus, self.characteristic))

    def _construir_tablas(self):
        """Tablas exp/log a partir del menor elemento primitivo."""
        q = self.q
        for g in range(2, q):
            exp = np.zeros(q - 1, dtype=np.int64)
            actual = 1
            primitivo = True
            for k in range(q - 1):
                if k > 0 and actual == 1:
                    primitivo = False
                    break
                exp[k] = actual
                actual = self._mult_escalar_poly(actual, g)
            if primitivo and actual == 1:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1, dtype=np.int64)
                self._exp, self._log = exp, log
                logger.debug(f"Tablas de F_{q} construidas con generador {g}")
                return
        raise ErrorInterno(f"F_{q} sin elemento primitivo")

    # -- operaciones elementales ----------------------------------------

    def _cifras(self, a: np.ndarray) -> List[np.ndarray]:
        return [(a // int(pk)) % self.characteristic for pk in self._potencias]

    def suma(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.characteristic
        if self.degree == 1:
            return (a + b) % p
        if p == 2:
            return np.bitwise_xor(a, b)
        res = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pk in self._potencias:
            res = res + ((a // int(pk) + b // int(pk)) % p) * int(pk)
        return res

    def opuesto(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        p = self.characteristic
        if self.degree == 1:
            return (-a) % p
        if p == 2:
            return a
        res = np.zeros(a.shape, dtype=np.int64)
        for pk in self._potencias:
            res = res + ((-(a // int(pk))) % p) * int(pk)
        return res

    def resta(self, a, b) -> np.ndarray:
        return self.suma(a, self.opuesto(b))

    def producto(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.degree == 1:
            return (a * b) % self.characteristic
        if self._log is not None:
            a, b = np.broadcast_arrays(a, b)
            res = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, res)
        return np.vectorize(self._mult_escalar_poly, otypes=[np.int64])(a, b)

    def inverso(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("el cero no es invertible")
        if self.degree == 1:
            return self._inversos[a]
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return np.vectorize(lambda x: self.potencia(int(x), self.q - 2), otypes=[np.int64])(a)

    def potencia(self, a: int, k: int) -> int:
        resultado, base = 1, int(a)
        while k:
            if k & 1:
                resultado = int(self.producto(resultado, base))
            base = int(self.producto(base, base))
            k >>= 1
        return resultado

    # -- subcuerpos ------------------------------------------------------

    def embedding(self, target: 'Field') -> np.ndarray:
        """
        Inmersión F_q -> F_{q^l} como array de índices.

        La imagen del generador es la menor raíz del módulo en el cuerpo
        destino, así que la inmersión es determinista.
        """
        if target.characteristic != self.characteristic or target.degree % self.degree:
            raise ErrorValidacion(f"F_{self.q} no es subcuerpo de F_{target.q}", campo='field')
        if self.degree == 1:
            return np.arange(self.q, dtype=np.int64)

        def evaluar(coefs, x):
            acumulado = 0
            for c in reversed(coefs):
                acumulado = int(target.suma(target.producto(acumulado, x), c))
            return acumulado

        raiz = next(b for b in range(target.q) if evaluar(self.modulus, b) == 0)
        return np.array([evaluar(self.digitos(x), raiz) for x in range(self.q)], dtype=np.int64)


@lru_cache(maxsize=None)
def _cuerpo_cacheado(characteristic: int, degree: int) -> Field:
    return Field(characteristic, degree)


def make_field(characteristic: int, degree: int = 1, cap: Optional[int] = None) -> Field:
    """Construye (o reutiliza) el cuerpo F_{p^r} con módulo determinista."""
    if not es_primo(characteristic):
        raise ErrorValidacion(f"La característica {characteristic} no es prima", campo='characteristic')
    if degree < 1:
        raise ErrorValidacion(f"Grado {degree} inválido", campo='degree')
    cap = limite('cuerpo') if cap is None else cap
    q = characteristic ** degree
    if q > cap:
        raise ErrorLimite(f"F_{q} supera el límite de cuerpo {cap}", exponente=degree, limite=cap)
    return _cuerpo_cacheado(characteristic, degree)


def make_field_of_order(q: int, cap: Optional[int] = None) -> Field:
    p, r = factorizar_potencia_prima(q)
    return make_field(p, r, cap=cap)


# ---------------------------------------------------------------------------
# Álgebra lineal sobre F_q
# ---------------------------------------------------------------------------

def matriz(field: Field, filas: Sequence[Sequence[int]], cols: Optional[int] = None) -> np.ndarray:
    """Matriz a partir de listas; admite formas 0×n y n×0."""
    m = np.array(filas, dtype=np.int64)
    if m.size == 0:
        m = m.reshape(len(filas), cols or 0)
    if m.ndim != 2 or np.any((m < 0) | (m >= field.q)):
        raise ErrorValidacion("Entradas fuera del cuerpo o forma inválida", campo='matriz')
    return m


def identidad(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if field.degree == 1:
        return (a @ b) % field.characteristic
    res = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        res = field.suma(res, field.producto(a[:, k][:, None], b[k, :][None, :]))
    return res


def mat_mul_lote(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Producto de lotes de matrices: (L, m, k) · (L, k, n)."""
    if field.degree == 1:
        return np.matmul(a, b) % field.characteristic
    res = np.zeros((a.shape[0], a.shape[1], b.shape[2]), dtype=np.int64)
    for k in range(a.shape[2]):
        res = field.suma(res, field.producto(a[:, :, k][:, :, None], b[:, k, :][:, None, :]))
    return res


def escalonar(field: Field, m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Forma escalonada reducida por filas y columnas pivote."""
    r = np.array(m, dtype=np.int64, copy=True)
    filas, cols = r.shape
    pivotes: List[int] = []
    fila = 0
    for col in range(cols):
        if fila >= filas:
            break
        candidatos = np.nonzero(r[fila:, col])[0]
        if candidatos.size == 0:
            continue
        piv = fila + int(candidatos[0])
        if piv != fila:
            r[[fila, piv]] = r[[piv, fila]]
        r[fila] = field.producto(field.inverso(r[fila, col]), r[fila])
        factores = r[:, col].copy()
        factores[fila] = 0
        otras = np.nonzero(factores)[0]
        if otras.size:
            resta = field.producto(factores[otras][:, None], r[fila][None, :])
            r[otras] = field.suma(r[otras], field.opuesto(resta))
        pivotes.append(col)
        fila += 1
    return r, pivotes


def mat_rank(field: Field, m: np.ndarray) -> int:
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return 0
    return len(escalonar(field, m)[1])


def solve_homogeneous(field: Field, system: np.ndarray) -> List[np.ndarray]:
    """Base del núcleo {x : system·x = 0}; tamaño cols - rango."""
    system = np.asarray(system, dtype=np.int64)
    cols = system.shape[1]
    if system.shape[0] == 0:
        r, pivotes = system, []
    else:
        r, pivotes = escalonar(field, system)
    libres = [c for c in range(cols) if c not in set(pivotes)]
    base = []
    for libre in libres:
        x = np.zeros(cols, dtype=np.int64)
        x[libre] = 1
        for i, piv in enumerate(pivotes):
            x[piv] = int(field.opuesto(r[i, libre]))
        base.append(x)
    return base


def mat_inverse(field: Field, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    r, pivotes = escalonar(field, np.hstack([m, identidad(n)]))
    if pivotes[:n] != list(range(n)):
        raise ErrorValidacion("Matriz singular", campo='matriz')
    return r[:, n:]


def column_basis(field: Field, m: np.ndarray) -> np.ndarray:
    """Columnas de m que forman base de su imagen."""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.int64)
    _, pivotes = escalonar(field, m)
    return m[:, pivotes]


def invertibles_lote(field: Field, mats: np.ndarray) -> np.ndarray:
    """
    Máscara booleana de las matrices cuadradas invertibles de un lote (L, n, n).
    Eliminación gaussiana vectorizada a lo largo del lote.
    """
    a = np.array(mats, dtype=np.int64, copy=True)
    lote, n = a.shape[0], a.shape[1]
    ok = np.ones(lote, dtype=bool)
    indices = np.arange(lote)
    for col in range(n):
        no_nulas = a[:, col:, col] != 0
        ok &= no_nulas.any(axis=1)
        piv = col + np.argmax(no_nulas, axis=1)
        fila_piv = a[indices, piv, :].copy()
        a[indices, piv, :] = a[:, col, :]
        a[:, col, :] = fila_piv
        pivote = np.where(a[:, col, col] == 0, 1, a[:, col, col])
        a[:, col, :] = field.producto(field.inverso(pivote)[:, None], a[:, col, :])
        factores = a[:, col + 1:, col]
        if factores.size:
            resta = field.producto(factores[:, :, None], a[:, col, :][:, None, :])
            a[:, col + 1:, :] = field.suma(a[:, col + 1:, :], field.opuesto(resta))
    return ok


# ---------------------------------------------------------------------------
# Racionales exactos
# ---------------------------------------------------------------------------

def fraccion_a_texto(x) -> str:
    """Serializa un racional como 'num/den'."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def inversa_racional(m: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """Inversa exacta sobre Q por Gauss-Jordan."""
    n = len(m)
    a = [[Fraction(v) for v in fila] + [Fraction(int(i == j)) for j in range(n)]
         for i, fila in enumerate(m)]
    for col in range(n):
        piv = next((f for f in range(col, n) if a[f][col] != 0), None)
        if piv is None:
            raise ErrorInterno("Matriz racional singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for f in range(n):
            if f != col and a[f][col] != 0:
                factor = a[f][col]
                a[f] = [v - factor * w for v, w in zip(a[f], a[col])]
    return [fila[n:] for fila in a]


__all__ = [
    'Field',
    'make_field',
    'make_field_of_order',
    'factorizar_potencia_prima',
    'modulo_minimo',
    'matriz',
    'identidad',
    'mat_mul',
    'mat_mul_lote',
    'escalonar',
    'mat_rank',
    'solve_homogeneous',
    'mat_inverse',
    'column_basis',
    'invertibles_lote',
    'fraccion_a_texto',
    'inversa_racional'
]
