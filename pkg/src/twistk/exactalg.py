"""Exact integer linear algebra.

Smith normal form, Hermite-style lattice bases, presented finitely generated
abelian groups and homomorphisms between them.  Everything works over Python
``int`` so intermediate entries never overflow.

Conventions
-----------
* A :class:`PresentedModule` with ``g`` generators and relation matrix ``R``
  (``g`` rows, one column per relation) is the group ``Z^g / R Z^r``.
* Invariant factors are normalised: units dropped, torsion factors ascending
  along the divisibility chain, free rank recorded as trailing zeros.
* Lattices are handled through canonical row-echelon bases (pivots positive,
  entries above a pivot reduced into ``[0, pivot)``), so two generating sets
  span the same lattice iff their canonical bases coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import IllFormedMap, ShapeError, TargetMismatch

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimension")
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ShapeError("row count required for an empty column list")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise ShapeError("ragged columns")
        return cls(rows, len(columns), tuple(int(columns[j][i]) for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(diag):
            out[i][i] = x
        return cls.from_rows(out, cols)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        """Assemble a block matrix; block rows must agree in height, block columns in width."""
        return vstack([hstack(list(brow)) for brow in blocks])

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.to_rows(), self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        a = self.to_rows()
        bcols = other.columns()
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(sum(x * y for x, y in zip(r, c) if x) for r in a for c in bcols),
        )

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ShapeError("vector length does not match column count")
        c = self.cols
        e = self.entries
        return tuple(sum(e[i * c + j] * v[j] for j in range(c) if v[j]) for i in range(self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ShapeError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ShapeError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __pow__(self, k: int) -> "IntMatrix":
        if not self.is_square() or k < 0:
            raise ShapeError("only nonnegative powers of square matrices")
        out = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    # -- serialisation ------------------------------------------------------

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": list(self.entries)}

    @classmethod
    def from_dict(cls, data: dict) -> "IntMatrix":
        return cls(int(data["rows"]), int(data["cols"]), tuple(int(x) for x in data["entries"]))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix.zeros(0, {self.cols})"


def hstack(mats: Sequence[IntMatrix]) -> IntMatrix:
    if not mats:
        raise ShapeError("nothing to stack")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeError("hstack needs equal row counts")
    out = [[] for _ in range(rows)]
    for m in mats:
        for i, r in enumerate(m.to_rows()):
            out[i].extend(r)
    return IntMatrix.from_rows(out, sum(m.cols for m in mats))


def vstack(mats: Sequence[IntMatrix]) -> IntMatrix:
    if not mats:
        raise ShapeError("nothing to stack")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeError("vstack needs equal column counts")
    return IntMatrix(sum(m.rows for m in mats), cols, tuple(x for m in mats for x in m.entries))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ a @ v == d`` with ``u``, ``v`` unimodular and ``d`` in Smith form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i, i] for i in range(min(self.d.rows, self.d.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def _find_pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    # smallest |entry| in the trailing block, ties to lowest (row, col)
    best = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x:
                ax = -x if x < 0 else x
                if best is None or ax < best_abs:
                    best, best_abs = (i, j), ax
                    if ax == 1:
                        return best
    return best


def _snf(a: list[list[int]], m: int, n: int, track: bool):
    """In-place Smith reduction of ``a`` (m x n).  Returns (diag, U, V) rows."""
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        rs, rd = a[src], a[dst]
        a[dst] = [x - q * y for x, y in zip(rd, rs)] if q else rd
        if track:
            us = U[src]
            U[dst] = [x - q * y for x, y in zip(U[dst], us)]

    def add_col(dst, src, q, nz_rows):
        # col_dst -= q * col_src
        for r in nz_rows:
            row = a[r]
            row[dst] -= q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        piv = _find_pivot(a, t)
        if piv is None:
            break
        i, j = piv
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = a[t][t]
            clean = True
            for r in range(t + 1, m):
                x = a[r][t]
                if x:
                    add_row(r, t, x // p)
                    if a[r][t]:
                        clean = False
            col_rows = [r for r in range(m) if a[r][t]]
            row_t = a[t]
            for c in range(t + 1, n):
                x = row_t[c]
                if x:
                    add_col(c, t, x // p, col_rows)
                    if row_t[c]:
                        clean = False
            if not clean:
                # move the smallest leftover in row/column t onto the diagonal
                best, best_abs = None, abs(p)
                for r in range(t + 1, m):
                    x = a[r][t]
                    if x and abs(x) < best_abs:
                        best, best_abs = ("r", r), abs(x)
                for c in range(t + 1, n):
                    x = a[t][c]
                    if x and abs(x) < best_abs:
                        best, best_abs = ("c", c), abs(x)
                if best is not None:
                    if best[0] == "r":
                        swap_rows(t, best[1])
                    else:
                        swap_cols(t, best[1])
                continue
            p = a[t][t]
            if p not in (1, -1):
                bad = None
                for r in range(t + 1, m):
                    row = a[r]
                    for c in range(t + 1, n):
                        if row[c] % p:
                            bad = r
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    add_row(t, bad, -1)
                    continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                U[t] = [-x for x in U[t]]
        t += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, U, V


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Return ``SmithDecomposition(u, d, v)`` with ``u @ a @ v == d``.

    Pivots are chosen as the smallest nonzero absolute value in the trailing
    block (ties to the lowest row then column), so the output is deterministic.
    """
    m, n = a.rows, a.cols
    work = a.to_rows()
    diag, U, V = _snf(work, m, n, track=True)
    return SmithDecomposition(
        IntMatrix.from_rows(U, m),
        IntMatrix.diagonal(diag, m, n),
        IntMatrix.from_rows(V, n),
    )


def smith_diagonal(a: IntMatrix) -> list[int]:
    """Diagonal of the Smith form without building the transforms."""
    return _snf(a.to_rows(), a.rows, a.cols, track=False)[0]


def matrix_rank(a: IntMatrix) -> int:
    return sum(1 for x in smith_diagonal(a) if x)


def normalize_invariant_factors(diag: Iterable[int], generators: int) -> tuple[int, ...]:
    """Invariant factors of ``Z^generators / D`` for Smith diagonal ``diag``."""
    diag = [abs(x) for x in diag]
    torsion = sorted(x for x in diag if x > 1)
    free = generators - sum(1 for x in diag if x)
    return tuple(torsion) + (0,) * free


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------


def echelon_basis(generators: Iterable[Sequence[int]], dim: int) -> tuple[Vector, ...]:
    """Canonical echelon basis of the lattice spanned by ``generators`` in Z^dim.

    Rows are in order of increasing pivot column, pivots positive and every
    entry above a pivot reduced into ``[0, pivot)``.  The result depends only on
    the lattice, not on the generating set.
    """
    rows = [list(v) for v in generators if any(v)]
    for r in rows:
        if len(r) != dim:
            raise ShapeError("generator length does not match dimension")
    basis: list[list[int]] = []
    pivots: list[int] = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            pc = p[col]
            keep = [p]
            for r in nz[1:]:
                q = r[col] // pc
                r = [x - q * y for x, y in zip(r, p)]
                if r[col]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        pivots.append(col)
        rows = rest
        col += 1
    for i, c in enumerate(pivots):
        b = basis[i]
        for h in range(i):
            q = basis[h][c] // b[c]
            if q:
                basis[h] = [x - q * y for x, y in zip(basis[h], b)]
    return tuple(tuple(b) for b in basis)


def _pivot(v: Sequence[int]) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


def reduce_mod_lattice(vec: Sequence[int], basis: Sequence[Vector]) -> tuple[Vector, list[int]]:
    """Reduce ``vec`` against an :func:`echelon_basis`.

    Returns ``(remainder, coefficients)`` with ``vec = remainder + sum(c_i b_i)``.
    The remainder is the canonical representative of the coset ``vec + L``;
    it is zero iff ``vec`` lies in the lattice.
    """
    v = list(vec)
    coeffs = []
    for b in basis:
        c = _pivot(b)
        q = v[c] // b[c]
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, b)]
    return tuple(v), coeffs


def lattice_contains(basis: Sequence[Vector], vec: Sequence[int]) -> bool:
    return not any(reduce_mod_lattice(vec, basis)[0])


def solve(a: IntMatrix, b: Sequence[int]) -> Vector | None:
    """Some integer ``x`` with ``a @ x == b``, or ``None`` if none exists."""
    sols = solve_columns(a, IntMatrix.from_columns([b], a.rows))
    return None if sols is None else sols.column(0)


def solve_columns(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Integer ``X`` with ``a @ X == b`` (one SNF for all columns), or ``None``."""
    if b.rows != a.rows:
        raise ShapeError("right-hand side has the wrong height")
    snf = smith_normal_form(a)
    diag = snf.diagonal
    r = snf.rank
    y = snf.u @ b
    z = [[0] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        for c in range(b.cols):
            val = y[i, c]
            if i < r:
                q, rem = divmod(val, diag[i])
                if rem:
                    return None
                z[i][c] = q
            elif val:
                return None
    return snf.v @ IntMatrix.from_rows(z, b.cols)


def _coordinates(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    coords = solve_columns(basis, vectors)
    if coords is None:
        raise ValueError("vectors do not lie in the span of the basis")
    return coords


# ---------------------------------------------------------------------------
# Kernels, cokernels, presented modules
# ---------------------------------------------------------------------------


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Saturated basis (as columns, canonical echelon form) of ``{x : a x = 0}``."""
    n = a.cols
    snf = smith_normal_form(a)
    vcols = snf.v.columns()[snf.rank:]
    basis = echelon_basis(vcols, n)
    if not basis:
        return IntMatrix.zeros(n, 0)
    return IntMatrix.from_columns(basis, n)


@dataclass(frozen=True)
class PresentedModule:
    """The abelian group ``Z^generators / span(columns of relations)``."""

    generators: int
    relations: IntMatrix
    invariant_factors: tuple[int, ...] = field(init=False, compare=False)
    _relation_basis: tuple[Vector, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ShapeError("relations must have one row per generator")
        object.__setattr__(
            self,
            "invariant_factors",
            normalize_invariant_factors(smith_diagonal(self.relations), self.generators),
        )
        object.__setattr__(
            self, "_relation_basis", echelon_basis(self.relations.columns(), self.generators)
        )

    @classmethod
    def free(cls, rank: int) -> "PresentedModule":
        return cls(rank, IntMatrix.zeros(rank, 0))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.invariant_factors if x == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(x for x in self.invariant_factors if x)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    @property
    def relation_lattice(self) -> tuple[Vector, ...]:
        return self._relation_basis

    def isomorphic(self, other: "PresentedModule") -> bool:
        return self.invariant_factors == other.invariant_factors

    def reduce(self, vec: Sequence[int]) -> Vector:
        """Canonical representative of the class of ``vec``."""
        return reduce_mod_lattice(vec, self._relation_basis)[0]

    def is_zero(self, vec: Sequence[int]) -> bool:
        return lattice_contains(self._relation_basis, vec)

    def same_presentation(self, other: "PresentedModule") -> bool:
        return self.generators == other.generators and self._relation_basis == other._relation_basis

    def describe(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __repr__(self) -> str:
        return f"PresentedModule({self.describe()}, generators={self.generators})"


def cokernel(a: IntMatrix) -> PresentedModule:
    return PresentedModule(a.rows, a)


def free_module(rank: int) -> PresentedModule:
    return PresentedModule.free(rank)


# ---------------------------------------------------------------------------
# Module maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleMap:
    """A homomorphism ``source -> target`` given on generators by ``matrix``.

    ``matrix`` has one row per target generator and one column per source
    generator.  Construction does not check well-definedness; call
    :meth:`certificate` (or :meth:`is_well_defined`) for that.
    """

    source: PresentedModule
    target: PresentedModule
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.generators, self.source.generators):
            raise ShapeError(
                f"map matrix {self.matrix.shape} does not fit "
                f"{self.source.generators} -> {self.target.generators} generators"
            )

    def certificate(self) -> IntMatrix:
        """``X`` with ``matrix @ source.relations == target.relations @ X``.

        Raises :class:`IllFormedMap` when no such ``X`` exists.
        """
        images = self.matrix @ self.source.relations
        if images.cols == 0:
            return IntMatrix.zeros(self.target.relations.cols, 0)
        if self.target.relations.cols == 0:
            if images.is_zero():
                return IntMatrix.zeros(0, images.cols)
            raise IllFormedMap("a source relation maps to a nonzero element of a free module")
        x = solve_columns(self.target.relations, images)
        if x is None:
            raise IllFormedMap("a source relation does not map into the target relations")
        return x

    def is_well_defined(self) -> bool:
        try:
            self.certificate()
        except IllFormedMap:
            return False
        return True

    def __call__(self, vec: Sequence[int]) -> Vector:
        return self.target.reduce(self.matrix.apply(vec))

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """``self ∘ first``."""
        if first.target.generators != self.source.generators:
            raise ShapeError("maps are not composable")
        return ModuleMap(first.source, self.target, self.matrix @ first.matrix)

    def equals(self, other: "ModuleMap") -> bool:
        """Equality as maps of quotient groups (agreement modulo target relations)."""
        if not (
            self.source.generators == other.source.generators
            and self.target.same_presentation(other.target)
        ):
            return False
        diff = self.matrix - other.matrix
        return all(self.target.is_zero(c) for c in diff.columns())

    @classmethod
    def identity(cls, module: PresentedModule) -> "ModuleMap":
        return cls(module, module, IntMatrix.identity(module.generators))


@dataclass(frozen=True)
class MapAnalysis:
    kernel: PresentedModule
    image: PresentedModule
    is_injective: bool
    is_surjective: bool
    kernel_lattice: IntMatrix
    image_lattice: IntMatrix


def _preimage_lattice(f: ModuleMap) -> tuple[Vector, ...]:
    """Echelon basis of ``{x in Z^g_s : f.matrix x in span(target.relations)}``."""
    gs = f.source.generators
    rel = f.target.relations
    stacked = hstack([f.matrix, -rel]) if rel.cols else f.matrix
    if stacked.cols == 0:
        return ()
    kb = kernel_basis(stacked)
    return echelon_basis((c[:gs] for c in kb.columns()), gs)


def image_lattice(f: ModuleMap) -> tuple[Vector, ...]:
    """Echelon basis of ``f.matrix Z^g_s + target relations`` inside Z^g_t."""
    gens = f.matrix.columns() + f.target.relations.columns()
    return echelon_basis(gens, f.target.generators)


def _as_matrix(basis: Sequence[Vector], dim: int) -> IntMatrix:
    return IntMatrix.from_columns(basis, dim) if basis else IntMatrix.zeros(dim, 0)


def induced_map_analysis(f: ModuleMap) -> MapAnalysis:
    """Kernel, image, injectivity and surjectivity of ``f`` on the quotient level."""
    f.certificate()
    gs = f.source.generators
    lat = _preimage_lattice(f)
    lat_m = _as_matrix(lat, gs)
    # source relations lie in the preimage lattice; express them in its basis
    if f.source.relations.cols and lat:
        coords = _coordinates(lat_m, f.source.relations)
    else:
        coords = IntMatrix.zeros(len(lat), f.source.relations.cols)
    kernel = PresentedModule(len(lat), coords)
    image = cokernel(lat_m)
    surj = cokernel(hstack([f.matrix, f.target.relations])).is_trivial
    img_lat = image_lattice(f)
    return MapAnalysis(
        kernel=kernel,
        image=image,
        is_injective=kernel.is_trivial,
        is_surjective=surj,
        kernel_lattice=lat_m,
        image_lattice=_as_matrix(img_lat, f.target.generators),
    )


def lattice_le(sub: Sequence[Vector], sup: Sequence[Vector]) -> bool:
    """``span(sub) ⊆ span(sup)`` with ``sup`` an echelon basis."""
    return all(lattice_contains(sup, v) for v in sub)


def submodule_equal(f: ModuleMap, g: ModuleMap) -> bool:
    """Whether ``im f`` and ``im g`` coincide as submodules of the common target."""
    if not f.target.same_presentation(g.target):
        raise TargetMismatch("images live in different target modules")
    a = image_lattice(f)
    b = image_lattice(g)
    return lattice_le(a, b) and lattice_le(b, a)


def submodule_inclusion(basis: Sequence[Sequence[int]], target: PresentedModule) -> ModuleMap:
    """Inclusion of the submodule generated by ``basis`` (plus relations) into ``target``.

    The submodule is presented on an echelon basis of ``span(basis) + relations``.
    """
    g = target.generators
    lat = echelon_basis(list(basis) + target.relations.columns(), g)
    lat_m = _as_matrix(lat, g)
    if target.relations.cols and lat:
        rel = _coordinates(lat_m, target.relations)
    else:
        rel = IntMatrix.zeros(len(lat), target.relations.cols)
    return ModuleMap(PresentedModule(len(lat), rel), target, lat_m)


def fixed_submodule(endo: ModuleMap) -> ModuleMap:
    """Inclusion of ``{x : endo(x) = x}`` into the module ``endo`` acts on."""
    m = endo.source
    if not endo.target.same_presentation(m):
        raise TargetMismatch("not an endomorphism")
    diff = ModuleMap(m, m, endo.matrix - IntMatrix.identity(m.generators))
    lat = _preimage_lattice(diff)
    return submodule_inclusion(lat, m)


def index_in(sub: ModuleMap, sup: ModuleMap) -> tuple[int, ...] | None:
    """Invariant factors of ``im(sup) / im(sub)`` when ``im(sub) ⊆ im(sup)``, else ``None``.

    Both maps must land in the same target.
    """
    if not sub.target.same_presentation(sup.target):
        raise TargetMismatch("images live in different target modules")
    a = image_lattice(sub)
    b = image_lattice(sup)
    if not lattice_le(a, b):
        return None
    g = sup.target.generators
    bm = _as_matrix(b, g)
    if not a:
        return normalize_invariant_factors([], len(b))
    coords = _coordinates(bm, _as_matrix(a, g))
    return cokernel(coords).invariant_factors
