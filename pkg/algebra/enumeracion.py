"""
Enumeración exhaustiva de representaciones sobre F_q.

Recorre el espacio de tuplas de matrices en orden lexicográfico (flecha,
fila, columna, índice de elemento), filtra por las relaciones en lotes
vectorizados y, para cada solución, estudia su anillo de endomorfismos
recorriendo sus q^dim elementos: unidades, idempotentes, nilpotentes y
tipos de Jordan. Cuando sólo interesan los absolutamente
indescomponibles y End(M) es grande, se usa una prueba estructural
(es_absolutamente_local) en lugar del recorrido.

Todos los totales se acumulan en un ResumenConteo por bloque y se suman
exactamente, así que no dependen del número de trabajadores.
"""

import itertools
import logging
from collections import Counter, OrderedDict
from dataclasses import dataclass, field as campo_dc
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from algebra.cuerpos import (
    Field, column_basis, escalonar, identidad, invertibles_lote, mat_inverse, mat_mul, mat_mul_lote, mat_rank
)
from algebra.errores import ErrorInterno, ErrorLimite, ErrorValidacion
from algebra.presentaciones import (
    AlgebraPresentation, Representation, extend_presentation, hom_basis
)
from utils.config_manager import limite
from utils.log_manager import log_execution_time, log_manager
from utils.paralelo import ProcesadorParalelo

logger = logging.getLogger(__name__)

# Elementos por lote en los recorridos vectorizados
LOTE = 4096

SOLUCIONES = 'soluciones'
ABSOLUTOS = 'abs'
NILPOTENTES = 'nil'
LADOS = 'lado'
JORDAN = 'jordan'


# ---------------------------------------------------------------------------
# Tipos
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JordanType:
    """Sucesión (α_1, α_2, …) de vectores de dimensión, sin ceros finales."""
    partes: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        partes = [tuple(int(x) for x in a) for a in self.partes]
        while partes and not any(partes[-1]):
            partes.pop()
        if any(x < 0 for a in partes for x in a):
            raise ErrorValidacion(f"Tipo de Jordan con entradas negativas: {partes}", campo='jordan')
        object.__setattr__(self, 'partes', tuple(partes))

    def dimension(self, n: Optional[int] = None) -> Tuple[int, ...]:
        """Σ_i i·α_i."""
        if not self.partes:
            return (0,) * (n or 0)
        total = np.zeros(len(self.partes[0]), dtype=np.int64)
        for i, a in enumerate(self.partes, start=1):
            total += i * np.array(a, dtype=np.int64)
        return tuple(int(x) for x in total)

    def to_dict(self):
        return {'partes': [list(a) for a in self.partes]}

    def __str__(self):
        return ' | '.join(','.join(str(x) for x in a) for a in self.partes) or '∅'


@dataclass(frozen=True, eq=False)
class EndRing:
    """End(M) como lista de endomorfismos base (una matriz por vértice)."""
    module: Representation
    basis: Tuple[Tuple[np.ndarray, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> Field:
        return self.module.field

    def elementos(self, inicio: int, fin: int) -> List[np.ndarray]:
        """Elementos [inicio, fin) del recorrido lexicográfico, como lotes (L, d_v, d_v) por vértice."""
        F = self.field
        coefs = _digitos(np.arange(inicio, fin, dtype=np.int64), F.q, self.dim)
        return [_combinar(F, coefs, np.array([b[v] for b in self.basis], dtype=np.int64)
                          .reshape(self.dim, dv, dv))
                for v, dv in enumerate(self.module.dim)]


@dataclass
class EscaneoEnd:
    unidades: int = 0
    nilpotentes: int = 0
    idempotentes: int = 0
    tipos: Counter = campo_dc(default_factory=Counter)


@dataclass
class ResumenConteo:
    """Sumas exactas de una pasada de enumeración."""
    soluciones: int = 0
    suma_unidades: int = 0
    nil_pares: int = 0
    nil_pares_T: int = 0
    divisiones: Counter = campo_dc(default_factory=Counter)
    tipos_jordan: Counter = campo_dc(default_factory=Counter)
    tipos_jordan_T: Counter = campo_dc(default_factory=Counter)

    def __add__(self, otro: 'ResumenConteo') -> 'ResumenConteo':
        return ResumenConteo(
            self.soluciones + otro.soluciones,
            self.suma_unidades + otro.suma_unidades,
            self.nil_pares + otro.nil_pares,
            self.nil_pares_T + otro.nil_pares_T,
            self.divisiones + otro.divisiones,
            self.tipos_jordan + otro.tipos_jordan,
            self.tipos_jordan_T + otro.tipos_jordan_T
        )


# ---------------------------------------------------------------------------
# Utilidades vectorizadas
# ---------------------------------------------------------------------------

def _digitos(indices: np.ndarray, q: int, longitud: int) -> np.ndarray:
    """Cifras en base q, la más significativa primero: forma (L, longitud)."""
    if longitud == 0:
        return np.zeros((len(indices), 0), dtype=np.int64)
    potencias = np.array([q ** k for k in range(longitud - 1, -1, -1)], dtype=np.int64)
    return (indices[:, None] // potencias[None, :]) % q


def _combinar(F: Field, coefs: np.ndarray, base: np.ndarray) -> np.ndarray:
    """Σ_k coefs[:, k]·base[k] para cada fila del lote."""
    lote = coefs.shape[0]
    if base.shape[0] == 0:
        return np.zeros((lote,) + base.shape[1:], dtype=np.int64)
    if F.degree == 1:
        return np.einsum('lk,kij->lij', coefs, base) % F.characteristic
    res = np.zeros((lote,) + base.shape[1:], dtype=np.int64)
    for k in range(base.shape[0]):
        res = F.suma(res, F.producto(coefs[:, k][:, None, None], base[k][None, :, :]))
    return res


def _todo_cero(a: np.ndarray) -> np.ndarray:
    return ~a.reshape(a.shape[0], -1).any(axis=1)


def _potencia_lote(F: Field, a: np.ndarray, k: int) -> np.ndarray:
    if k == 0:
        return np.broadcast_to(identidad(a.shape[1]), a.shape).copy()
    resultado = a
    for _ in range(k - 1):
        resultado = mat_mul_lote(F, resultado, a)
    return resultado


def vectores_hasta(cota: Sequence[int], incluir_cero: bool = False) -> List[Tuple[int, ...]]:
    """Vectores d con 0 ≤ d ≤ cota componente a componente, en orden lexicográfico."""
    vectores = [tuple(v) for v in itertools.product(*(range(int(c) + 1) for c in cota))]
    return vectores if incluir_cero else [v for v in vectores if any(v)]


def gl_order(d: Sequence[int], q: int) -> int:
    """|GL_d(F_q)| = ∏_v ∏_{k<d_v} (q^{d_v} − q^k)."""
    total = 1
    for dv in d:
        for k in range(int(dv)):
            total *= q ** dv - q ** k
    return total


def sobre_cuerpo(pres: AlgebraPresentation, field: Optional[Field]) -> AlgebraPresentation:
    """La presentación sobre `field`, que debe ser una extensión de su cuerpo."""
    if field is None or field == pres.field:
        return pres
    base = pres.field
    if field.characteristic != base.characteristic or field.degree % base.degree:
        raise ErrorValidacion(f"F_{field.q} no es una extensión de F_{base.q}", campo='field')
    return extend_presentation(pres, field.degree // base.degree)


def _comprobar_tuplas(pres: AlgebraPresentation, d: Tuple[int, ...], cap: Optional[int]) -> int:
    exponente = pres.exponente(d)
    cap = limite('tuplas') if cap is None else cap
    q = pres.field.q
    if q ** exponente > cap:
        raise ErrorLimite(
            f"El espacio de tuplas q^{exponente} = {q}^{exponente} supera el límite {cap} "
            f"para d = {d} sobre F_{q}", exponente=exponente, limite=cap)
    return exponente


def _comprobar_endomorfismos(E: EndRing, cap: Optional[int]) -> int:
    cap = limite('endomorfismos') if cap is None else cap
    total = E.field.q ** E.dim
    if total > cap:
        raise ErrorLimite(
            f"End(M) tiene dimensión {E.dim}: q^{E.dim} = {total} supera el límite {cap}",
            exponente=E.dim, limite=cap)
    return total


# ---------------------------------------------------------------------------
# Soluciones
# ---------------------------------------------------------------------------

def _soluciones_lote(pres: AlgebraPresentation, d: Tuple[int, ...], exponente: int,
                     inicio: int, fin: int) -> Tuple[np.ndarray, List[np.ndarray]]:
    """Índices de [inicio, fin) que cumplen las relaciones y sus matrices por flecha."""
    F = pres.field
    indices = np.arange(inicio, fin, dtype=np.int64)
    cifras = _digitos(indices, F.q, exponente)

    matrices, desplazamiento = [], 0
    for a in pres.quiver.arrows:
        filas, cols = d[a.target], d[a.source]
        matrices.append(cifras[:, desplazamiento:desplazamiento + filas * cols]
                        .reshape(len(indices), filas, cols))
        desplazamiento += filas * cols

    validas = np.ones(len(indices), dtype=bool)
    for rel in pres.relations:
        total = None
        for coef, camino in rel.terms:
            compuesto = matrices[camino[0]]
            for k in camino[1:]:
                compuesto = mat_mul_lote(F, matrices[k], compuesto)
            termino = F.producto(coef, compuesto)
            total = termino if total is None else F.suma(total, termino)
        validas &= _todo_cero(total)

    seleccion = np.nonzero(validas)[0]
    return indices[seleccion], [m[seleccion] for m in matrices]


def _bloque_representaciones(pres, d, exponente, inicio, fin) -> Iterator[Representation]:
    for a in range(inicio, fin, LOTE):
        indices, matrices = _soluciones_lote(pres, d, exponente, a, min(fin, a + LOTE))
        for k in range(len(indices)):
            yield Representation(pres, d, tuple(np.array(m[k]) for m in matrices))


def iterate_solutions(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                      cap: Optional[int] = None) -> Iterator[Representation]:
    """
    Recorre en orden lexicográfico las tuplas que cumplen todas las relaciones.

    Raises:
        ErrorLimite: si q^(Σ d_s·d_t) supera el límite de tuplas
    """
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    exponente = _comprobar_tuplas(pres, d, cap)
    total = pres.field.q ** exponente
    logger.debug(f"Recorriendo {total} tuplas para d = {d} sobre F_{pres.field.q}")

    encontradas = 0
    for M in _bloque_representaciones(pres, d, exponente, 0, total):
        encontradas += 1
        yield M
    logger.debug(f"{encontradas} soluciones de {total} tuplas para d = {d}")


# ---------------------------------------------------------------------------
# Anillo de endomorfismos
# ---------------------------------------------------------------------------

def end_basis(M: Representation) -> EndRing:
    return EndRing(M, tuple(hom_basis(M, M)))


def _tipo_jordan(F: Field, theta: Sequence[np.ndarray], d: Tuple[int, ...]) -> JordanType:
    n = max(d) if d else 0
    rangos = []
    for k in range(n + 2):
        rangos.append([mat_rank(F, _potencia_lote(F, t[None], k)[0]) if dv else 0
                       for t, dv in zip(theta, d)])
    partes = []
    for i in range(1, n + 1):
        partes.append(tuple((rangos[i - 1][v] - rangos[i][v]) - (rangos[i][v] - rangos[i + 1][v])
                            for v in range(len(d))))
    return JordanType(tuple(partes))


def _escanear(E: EndRing, jordan: bool = False, cap: Optional[int] = None) -> EscaneoEnd:
    """Un único recorrido de End(M) que cuenta unidades, idempotentes y nilpotentes."""
    M = E.module
    d = M.dim
    F = E.field
    q = F.q

    if E.dim == 0:
        # Módulo nulo: 0 = identidad
        return EscaneoEnd(1, 1, 1, Counter({JordanType(()): 1}) if jordan else Counter())
    if E.dim == 1:
        # Sólo escalares: q−1 unidades, 0 es el único nilpotente
        return EscaneoEnd(q - 1, 1, 2, Counter({JordanType((d,)): 1}) if jordan else Counter())

    total = _comprobar_endomorfismos(E, cap)
    resultado = EscaneoEnd()
    for inicio in range(0, total, LOTE):
        fin = min(total, inicio + LOTE)
        phi = E.elementos(inicio, fin)
        lote = fin - inicio

        invertible = np.ones(lote, dtype=bool)
        idempotente = np.ones(lote, dtype=bool)
        nilpotente = np.ones(lote, dtype=bool)
        for fv, dv in zip(phi, d):
            if dv == 0:
                continue
            invertible &= invertibles_lote(F, fv)
            idempotente &= _todo_cero(mat_mul_lote(F, fv, fv) - fv)
            nilpotente &= _todo_cero(_potencia_lote(F, fv, dv))

        resultado.unidades += int(invertible.sum())
        resultado.idempotentes += int(idempotente.sum())
        resultado.nilpotentes += int(nilpotente.sum())
        if jordan:
            for k in np.nonzero(nilpotente)[0]:
                resultado.tipos[_tipo_jordan(F, [fv[k] for fv in phi], d)] += 1
    return resultado


def _aplanar(elemento: Sequence[np.ndarray]) -> np.ndarray:
    return np.concatenate([np.asarray(m, dtype=np.int64).ravel() for m in elemento])


def _producto_end(F: Field, x: Sequence[np.ndarray], y: Sequence[np.ndarray]) -> Tuple[np.ndarray, ...]:
    return tuple(mat_mul(F, a, b) for a, b in zip(x, y))


def _es_nilpotente(F: Field, elemento: Sequence[np.ndarray]) -> bool:
    return all(not dv or not np.any(_potencia_lote(F, m[None], dv)[0])
               for m, dv in ((m, m.shape[0]) for m in elemento))


def es_absolutamente_local(E: EndRing) -> bool:
    """
    End(M) = F_q·1 ⊕ J con J ideal nilpotente, sin recorrer sus q^dim elementos.

    Cada elemento base b_k debe tener un único autovalor λ_k ∈ F_q común a
    todos los vértices; J = span{b_k − λ_k} debe ser cerrado por producto y
    nilpotente. Equivale a |Aut(M)| = q^e − q^{e−1}.
    """
    if E.dim == 0:
        return False
    F = E.field
    n = sum(E.module.dim)

    radicales = []
    for b in E.basis:
        candidatos = [lam for lam in F.elements()
                      if _es_nilpotente(F, tuple(F.resta(m, F.producto(lam, identidad(m.shape[0])))
                                                 for m in b))]
        if not candidatos:
            return False
        lam = candidatos[0]
        radicales.append(tuple(F.resta(m, F.producto(lam, identidad(m.shape[0]))) for m in b))

    def base_de(elementos):
        if not elementos:
            return []
        columnas = np.stack([_aplanar(x) for x in elementos], axis=1)
        _, pivotes = escalonar(F, columnas)
        return [elementos[k] for k in pivotes]

    J = base_de(radicales)
    if len(J) != E.dim - 1:
        return False
    rango_J = len(J)
    productos = [_producto_end(F, x, y) for x in J for y in J]
    if productos and len(base_de(J + productos)) != rango_J:
        return False

    # J^k = 0 para algún k ≤ Σ d_v
    potencia = J
    for _ in range(n):
        if not potencia:
            return True
        potencia = base_de([_producto_end(F, x, y) for x in potencia for y in J])
    return not potencia


def unit_count(E: EndRing, cap: Optional[int] = None) -> int:
    """|Aut(M)|: elementos del span de la base invertibles en cada vértice."""
    return _escanear(E, cap=cap).unidades


def is_abs_indec(E: EndRing, cap: Optional[int] = None) -> bool:
    """Absolutamente indescomponible si |Aut| = q^e − q^{e−1}, e = dim End."""
    if E.dim == 0:
        return False
    q = E.field.q
    return unit_count(E, cap) == q ** E.dim - q ** (E.dim - 1)


def is_indec(E: EndRing, cap: Optional[int] = None) -> bool:
    """Indescomponible si los únicos idempotentes son 0 y la identidad."""
    return _escanear(E, cap=cap).idempotentes == 2


def _idempotente_no_trivial(E: EndRing, cap: Optional[int] = None) -> Optional[Tuple[np.ndarray, ...]]:
    if E.dim <= 1:
        return None
    d = E.module.dim
    F = E.field
    total = _comprobar_endomorfismos(E, cap)
    for inicio in range(0, total, LOTE):
        fin = min(total, inicio + LOTE)
        phi = E.elementos(inicio, fin)
        idempotente = np.ones(fin - inicio, dtype=bool)
        nulo = np.ones(fin - inicio, dtype=bool)
        identico = np.ones(fin - inicio, dtype=bool)
        for fv, dv in zip(phi, d):
            if dv == 0:
                continue
            idempotente &= _todo_cero(mat_mul_lote(F, fv, fv) - fv)
            nulo &= _todo_cero(fv)
            identico &= _todo_cero(fv - identidad(dv)[None])
        candidatos = np.nonzero(idempotente & ~nulo & ~identico)[0]
        if candidatos.size:
            k = int(candidatos[0])
            return tuple(fv[k] for fv in phi)
    return None


def decompose(M: Representation, cap: Optional[int] = None) -> List[Representation]:
    """
    Sumandos indescomponibles de M.

    Se parte M por la imagen y el núcleo del primer idempotente no trivial
    de End(M), vértice a vértice, y se repite sobre cada parte.
    """
    if not any(M.dim):
        return []
    phi = _idempotente_no_trivial(end_basis(M), cap)
    if phi is None:
        return [M]

    F = M.field
    cambios, rangos = [], []
    for fv, dv in zip(phi, M.dim):
        imagen = column_basis(F, fv)
        nucleo = column_basis(F, F.resta(identidad(dv), fv))
        cambios.append(np.hstack([imagen, nucleo]).astype(np.int64).reshape(dv, dv))
        rangos.append(imagen.shape[1])
    inversas = [mat_inverse(F, P) for P in cambios]

    primero, segundo = [], []
    for a, m in zip(M.presentation.quiver.arrows, M.matrices):
        nueva = mat_mul(F, mat_mul(F, inversas[a.target], m), cambios[a.source])
        rt, rs = rangos[a.target], rangos[a.source]
        primero.append(np.ascontiguousarray(nueva[:rt, :rs]))
        segundo.append(np.ascontiguousarray(nueva[rt:, rs:]))

    d1 = tuple(rangos)
    d2 = tuple(dv - r for dv, r in zip(M.dim, rangos))
    return (decompose(Representation(M.presentation, d1, tuple(primero)), cap)
            + decompose(Representation(M.presentation, d2, tuple(segundo)), cap))


def contar_epimorfismos(M: Representation, N: Representation, cap: Optional[int] = None) -> int:
    """Homomorfismos M → N sobreyectivos en cada vértice."""
    F = M.field
    base = hom_basis(M, N)
    h = len(base)
    cap = limite('endomorfismos') if cap is None else cap
    total = F.q ** h
    if total > cap:
        raise ErrorLimite(f"Hom(M, N) tiene dimensión {h}: q^{h} = {total} supera el límite {cap}",
                          exponente=h, limite=cap)

    cuenta = 0
    for inicio in range(0, total, LOTE):
        fin = min(total, inicio + LOTE)
        coefs = _digitos(np.arange(inicio, fin, dtype=np.int64), F.q, h)
        sobre = np.ones(fin - inicio, dtype=bool)
        for v, (dv, ev) in enumerate(zip(M.dim, N.dim)):
            if ev == 0:
                continue
            fv = _combinar(F, coefs, np.array([b[v] for b in base], dtype=np.int64).reshape(h, ev, dv))
            sobre &= np.array([mat_rank(F, f) == ev for f in fv], dtype=bool)
        cuenta += int(sobre.sum())
    return cuenta


def jordan_type(M: Representation, theta: Sequence[np.ndarray]) -> JordanType:
    """
    Tipo de Jordan de un endomorfismo nilpotente θ de M.

    Raises:
        ErrorValidacion: si θ no es un endomorfismo o no es nilpotente
    """
    F = M.field
    theta = tuple(np.asarray(t, dtype=np.int64) for t in theta)
    if len(theta) != len(M.dim) or any(t.shape != (dv, dv) for t, dv in zip(theta, M.dim)):
        raise ErrorValidacion("θ no tiene la forma de un endomorfismo de M", campo='theta')
    for a, m in zip(M.presentation.quiver.arrows, M.matrices):
        if np.any(mat_mul(F, theta[a.target], m) != mat_mul(F, m, theta[a.source])):
            raise ErrorValidacion(f"θ no conmuta con la flecha {a.label}", campo='theta')
    for t, dv in zip(theta, M.dim):
        if dv and np.any(_potencia_lote(F, t[None], dv)[0] != 0):
            raise ErrorValidacion("θ no es nilpotente", campo='theta')
    return _tipo_jordan(F, theta, M.dim)


# ---------------------------------------------------------------------------
# Pasada de conteo
# ---------------------------------------------------------------------------

def _procesar_bloque(inicio: int, fin: int, pres: AlgebraPresentation, d: Tuple[int, ...],
                     exponente: int, tareas: FrozenSet[str], cap_end: Optional[int]) -> ResumenConteo:
    """Trabajo de un bloque contiguo de índices de tupla."""
    resumen = ResumenConteo()
    q = pres.field.q
    necesita_end = bool(tareas & {ABSOLUTOS, NILPOTENTES, JORDAN})
    solo_absolutos = not tareas & {NILPOTENTES, JORDAN}
    lados: Dict[Tuple[int, ...], str] = {}
    if LADOS in tareas:
        from algebra.torsion import split_dims

    for M in _bloque_representaciones(pres, d, exponente, inicio, fin):
        resumen.soluciones += 1
        escaneo = None
        if necesita_end:
            E = end_basis(M)
            if solo_absolutos and q ** E.dim > LOTE:
                # End grande: prueba estructural en lugar del recorrido
                if es_absolutamente_local(E):
                    resumen.suma_unidades += q ** E.dim - q ** (E.dim - 1)
                if LADOS in tareas:
                    d1, d2 = split_dims(pres, M, cap=cap_end, cache=lados)
                    resumen.divisiones[(d1, d2)] += 1
                continue
            escaneo = _escanear(E, jordan=JORDAN in tareas, cap=cap_end)
            absoluto = E.dim > 0 and escaneo.unidades == q ** E.dim - q ** (E.dim - 1)
            if absoluto and escaneo.idempotentes != 2:
                raise ErrorInterno(f"Módulo absolutamente indescomponible con idempotentes "
                                   f"no triviales en d = {d}")
            if ABSOLUTOS in tareas and absoluto:
                resumen.suma_unidades += escaneo.unidades
            if NILPOTENTES in tareas:
                resumen.nil_pares += escaneo.nilpotentes
            if JORDAN in tareas:
                resumen.tipos_jordan.update(escaneo.tipos)

        if LADOS in tareas:
            d1, d2 = split_dims(pres, M, cap=cap_end, cache=lados)
            resumen.divisiones[(d1, d2)] += 1
            if not any(d1) and escaneo is not None:
                resumen.nil_pares_T += escaneo.nilpotentes
                resumen.tipos_jordan_T.update(escaneo.tipos)
    return resumen


# Pasadas recientes, de la más antigua a la más reciente
_CACHE: "OrderedDict[Tuple, ResumenConteo]" = OrderedDict()
CACHE_MAXIMO = 128


def limpiar_cache():
    _CACHE.clear()


def resumen_conteo(pres: AlgebraPresentation, d: Sequence[int], tareas: Iterable[str] = (SOLUCIONES,),
                   field: Optional[Field] = None, workers: Optional[int] = None,
                   cap: Optional[int] = None, cap_end: Optional[int] = None) -> ResumenConteo:
    """
    Una pasada de enumeración con las tareas pedidas.

    Args:
        tareas: subconjunto de {'soluciones', 'abs', 'nil', 'lado', 'jordan'}
        workers: trabajadores de joblib; no cambia ningún total
        cap: límite del espacio de tuplas
        cap_end: límite de q^dim End(M)
    """
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    tareas = frozenset(tareas) | {SOLUCIONES}
    desconocidas = tareas - {SOLUCIONES, ABSOLUTOS, NILPOTENTES, LADOS, JORDAN}
    if desconocidas:
        raise ErrorValidacion(f"Tareas desconocidas: {sorted(desconocidas)}", campo='tareas')
    exponente = _comprobar_tuplas(pres, d, cap)

    cap_end = limite('endomorfismos') if cap_end is None else cap_end
    clave = (pres, d, tareas, cap_end)
    if clave in _CACHE:
        _CACHE.move_to_end(clave)
        return _CACHE[clave]

    total = pres.field.q ** exponente
    logger.debug(f"Conteo {sorted(tareas)} para d = {d} sobre F_{pres.field.q}: {total} tuplas")
    log_manager.performance.start_operation('resumen_conteo', dim=list(d), q=pres.field.q,
                                            algebra=pres.kind, tuplas=total)
    try:
        parciales = ProcesadorParalelo(workers).mapear_rango(
            _procesar_bloque, total, pres, d, exponente, tareas, cap_end)
    except Exception:
        log_manager.performance.end_operation('resumen_conteo', status='error')
        raise
    resumen = sum(parciales, ResumenConteo())
    log_manager.performance.end_operation('resumen_conteo', soluciones=resumen.soluciones)

    _CACHE[clave] = resumen
    while len(_CACHE) > CACHE_MAXIMO:
        _CACHE.popitem(last=False)
    return resumen


def count_solutions(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                    **opciones) -> int:
    return resumen_conteo(pres, d, (SOLUCIONES,), field, **opciones).soluciones


@log_execution_time
def count_abs_indec(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                    **opciones) -> int:
    """
    Número de clases de isomorfía de representaciones absolutamente
    indescomponibles de dimensión d: Σ |Aut(M)| / |GL_d| sobre las soluciones.

    Raises:
        ErrorInterno: si la suma no es divisible por |GL_d(F_q)|
    """
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    suma = resumen_conteo(pres, d, (ABSOLUTOS,), **opciones).suma_unidades
    orden = gl_order(d, pres.field.q)
    cociente, resto = divmod(suma, orden)
    if resto:
        logger.error(f"Suma de unidades {suma} no divisible por |GL_d| = {orden} para d = {d}")
        raise ErrorInterno(f"Conteo no entero {suma}/{orden} para d = {d} sobre F_{pres.field.q}")
    return cociente


def count_abs_indec_by_side(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                            **opciones) -> Tuple[int, int]:
    """
    (A^T, A^F) para d: cada módulo indescomponible de dimensión d cae en el
    lado de la clase ψ(d), así que todo el conteo va a uno de los dos.
    """
    from algebra.reticulo import psi_inverse
    from algebra.torsion import Side, indec_side

    pres = sobre_cuerpo(pres, field)
    total = count_abs_indec(pres, d, **opciones)
    if total == 0:
        return 0, 0
    lado = indec_side(psi_inverse(pres, d))
    return (total, 0) if lado == Side.T else (0, total)


def stack_volume(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                 **opciones) -> Fraction:
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    return Fraction(count_solutions(pres, d, **opciones), gl_order(d, pres.field.q))


def nil_volume(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
               **opciones) -> Fraction:
    """#{(M, θ): θ ∈ End(M) nilpotente} / |GL_d|."""
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    pares = resumen_conteo(pres, d, (NILPOTENTES,), **opciones).nil_pares
    return Fraction(pares, gl_order(d, pres.field.q))


def nil_volume_T(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                 **opciones) -> Fraction:
    """Como nil_volume, sólo con módulos cuyos sumandos están todos en T."""
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    pares = resumen_conteo(pres, d, (NILPOTENTES, LADOS), **opciones).nil_pares_T
    return Fraction(pares, gl_order(d, pres.field.q))


def nil_pairs_by_type(pres: AlgebraPresentation, d: Sequence[int], field: Optional[Field] = None,
                      solo_T: bool = False, **opciones) -> Counter:
    """Número de pares (M, θ) nilpotentes por tipo de Jordan."""
    tareas = (JORDAN, LADOS) if solo_T else (JORDAN,)
    resumen = resumen_conteo(pres, d, tareas, field, **opciones)
    return Counter(resumen.tipos_jordan_T if solo_T else resumen.tipos_jordan)


__all__ = [
    'JordanType',
    'EndRing',
    'ResumenConteo',
    'gl_order',
    'vectores_hasta',
    'sobre_cuerpo',
    'iterate_solutions',
    'end_basis',
    'unit_count',
    'is_abs_indec',
    'is_indec',
    'es_absolutamente_local',
    'decompose',
    'jordan_type',
    'contar_epimorfismos',
    'resumen_conteo',
    'limpiar_cache',
    'count_solutions',
    'count_abs_indec',
    'count_abs_indec_by_side',
    'stack_volume',
    'nil_volume',
    'nil_volume_T',
    'nil_pairs_by_type'
]
