"""Point-level exterior algebra: graded multivectors and multiforms.

Values are dense arrays of 2**n blade coefficients over an n-dimensional
module.  Blades are indexed by bit masks: bit i set means basis element
i+1 participates, so mask 0b101 is the blade e1^e3.  Coefficients always
refer to the ascending-index blade (e13 means e1^e3, never e3^e1); all
sign bookkeeping happens inside the product kernels.

Multivectors carry the frame basis (e1..en), multiforms the dual coframe
basis (eps1..epsn).  The two types share their layout but are distinct
classes; mixing them in a same-kind operation is a type error, not
something checked at runtime.

The duality pairing is normalized so that <eps_J, e_K> = delta_JK, i.e.
the pairing matrix is the identity in the blade basis and the pairing of
two values is the plain coefficient dot product.  Contractions are defined
by adjointness against the wedge with a reversion:

    < <Phi,X| , Psi >  =  < X, ~Phi ^ Psi >      (left)
    < |Phi,X> , Y   >  =  < Phi, Y ^ ~X >        (right)

and the mirrored versions with the roles of vectors and forms swapped.

The product kernels are written over a generic coefficient ring: any type
supporting +, *, unary - and multiplication by int works, so the same
code serves float-valued points here and polynomial-valued fields in
:mod:`exfield.fields`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


MAX_DIM = 8


class AlgebraError(Exception):
    """Base class for errors raised by the engine."""


class DimensionMismatch(AlgebraError):
    """Operands disagree on the module dimension."""


class GradeError(AlgebraError):
    """A grade index is out of range or an argument has the wrong grade."""


def grade_of(mask: int) -> int:
    """Grade of the blade with the given bit mask (number of factors)."""
    return mask.bit_count()


def reversion_sign(k: int) -> int:
    """Sign (-1)**(k(k-1)/2) picked up by reverting a grade-k blade."""
    return -1 if (k * (k - 1) // 2) % 2 else 1


def blade_name(mask: int, prefix: str = "e") -> str:
    """Canonical name of a blade: ``1`` for the scalar, else e.g. ``e13``."""
    if mask == 0:
        return "1"
    digits = [str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1]
    return prefix + "".join(digits)


def parse_blade_name(name: str) -> tuple[str, int]:
    """Parse a blade name into (prefix, mask).

    Accepts ``1`` (scalar, prefix ``""``), ``e<digits>`` and ``eps<digits>``
    with strictly ascending nonzero digits.  Raises ValueError otherwise.
    """
    if name == "1":
        return "", 0
    if name.startswith("eps"):
        prefix, digits = "eps", name[3:]
    elif name.startswith("e"):
        prefix, digits = "e", name[1:]
    else:
        raise ValueError(f"bad blade name {name!r}")
    if not digits or not digits.isdigit():
        raise ValueError(f"bad blade name {name!r}")
    mask = 0
    last = 0
    for ch in digits:
        i = int(ch)
        if i == 0 or i <= last:
            raise ValueError(f"blade indices must be ascending in {name!r}")
        mask |= 1 << (i - 1)
        last = i
    return prefix, mask


# ---------------------------------------------------------------------------
# sign tables and ring-generic kernels


@lru_cache(maxsize=None)
def wedge_sign_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Table s[a][b] = sign of e_a ^ e_b, 0 when the blades overlap."""
    size = 1 << n
    table = []
    for a in range(size):
        row = []
        for b in range(size):
            if a & b:
                row.append(0)
                continue
            # count transpositions moving each factor of b past the
            # higher-index factors of a
            swaps = 0
            rest = a >> 1
            while rest:
                swaps += (rest & b).bit_count()
                rest >>= 1
            row.append(-1 if swaps & 1 else 1)
        table.append(tuple(row))
    return tuple(table)


def wedge_sign(a: int, b: int) -> int:
    """Sign of e_a ^ e_b in ascending order; 0 if the blades share a factor."""
    if a & b:
        return 0
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += (rest & b).bit_count()
        rest >>= 1
    return -1 if swaps & 1 else 1


def wedge_coeffs(ca, cb, n: int) -> list:
    """Exterior product on coefficient arrays (ring-generic)."""
    signs = wedge_sign_table(n)
    out = [0] * (1 << n)
    for a, x in enumerate(ca):
        if not x:
            continue
        row = signs[a]
        for b, y in enumerate(cb):
            if not y:
                continue
            s = row[b]
            if s:
                t = a | b
                out[t] = out[t] + s * (x * y)
    return out


def grade_coeffs(ca, k: int, n: int) -> list:
    """Keep only the blades of grade k."""
    return [c if grade_of(m) == k else 0 for m, c in enumerate(ca)]


def reversion_coeffs(ca, n: int) -> list:
    """Grade-wise reversion signs (-1)**(k(k-1)/2)."""
    return [reversion_sign(grade_of(m)) * c if c else c for m, c in enumerate(ca)]


def pairing_coeff(cphi, cx, n: int):
    """Duality scalar product: coefficient dot product over all blades."""
    acc = 0
    for a, x in enumerate(cphi):
        if not x:
            continue
        y = cx[a]
        if y:
            acc = acc + x * y
    return acc


def lcontract_coeffs(csmall, cbig, n: int) -> list:
    """Left contraction kernel.

    First argument plays the reversed (small) side, second the big side:
    out[B\\A] += rev(|A|) * sign(A, B\\A) * csmall[A] * cbig[B] over A <= B.
    Serves both <Phi,X| and the mirrored <X,Phi|.
    """
    signs = wedge_sign_table(n)
    full = (1 << n) - 1
    out = [0] * (1 << n)
    for a, x in enumerate(csmall):
        if not x:
            continue
        rs = reversion_sign(grade_of(a))
        rest = full ^ a
        t = rest
        while True:
            y = cbig[a | t]
            if y:
                out[t] = out[t] + (rs * signs[a][t]) * (x * y)
            if t == 0:
                break
            t = (t - 1) & rest
    return out


def rcontract_coeffs(cbig, csmall, n: int) -> list:
    """Right contraction kernel.

    First argument is the big side, second the reversed (small) side:
    out[A\\B] += rev(|B|) * sign(A\\B, B) * cbig[A] * csmall[B] over B <= A.
    Serves both |Phi,X> and the mirrored |X,Phi>.
    """
    signs = wedge_sign_table(n)
    full = (1 << n) - 1
    out = [0] * (1 << n)
    for b, y in enumerate(csmall):
        if not y:
            continue
        rs = reversion_sign(grade_of(b))
        rest = full ^ b
        t = rest
        while True:
            x = cbig[b | t]
            if x:
                out[t] = out[t] + (rs * signs[t][b]) * (x * y)
            if t == 0:
                break
            t = (t - 1) & rest
    return out


def grade1_coeffs(col, n: int) -> list:
    """Embed an n-component column into the grade-1 slots of a full array."""
    out = [0] * (1 << n)
    for i, c in enumerate(col):
        if c:
            out[1 << i] = c
    return out


def apply_coeffs(rows, ca, n: int) -> list:
    """Matrix action on the grade-1 slots of a coefficient array."""
    out = [0] * (1 << n)
    for r in range(n):
        acc = 0
        row = rows[r]
        for c in range(n):
            v = ca[1 << c]
            if v:
                m = row[c]
                if m:
                    acc = acc + m * v
        out[1 << r] = acc
    return out


def extend_coeffs(rows, ca, n: int) -> list:
    """Outermorphism lift: identity on grade 0, wedge of column images above.

    ``rows`` is the n x n matrix of the grade-1 operator (row-major,
    column j = image of basis vector j).
    """
    cols = [grade1_coeffs([rows[r][c] for r in range(n)], n) for c in range(n)]
    out = [0] * (1 << n)
    for mask, x in enumerate(ca):
        if not x:
            continue
        if mask == 0:
            out[0] = out[0] + x
            continue
        blade = None
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            blade = cols[i] if blade is None else wedge_coeffs(blade, cols[i], n)
            m &= m - 1
        for t, c in enumerate(blade):
            if c:
                out[t] = out[t] + x * c
    return out


def generalize_coeffs(rows, ca, n: int) -> list:
    """Derivation lift: zero on grade 0, one factor mapped per summand above."""
    cols = [grade1_coeffs([rows[r][c] for r in range(n)], n) for c in range(n)]
    basis = [grade1_coeffs([1 if i == j else 0 for i in range(n)], n) for j in range(n)]
    out = [0] * (1 << n)
    for mask, x in enumerate(ca):
        if not x or mask == 0:
            continue
        bits = [i for i in range(n) if mask >> i & 1]
        for pos in range(len(bits)):
            blade = None
            for j, i in enumerate(bits):
                factor = cols[i] if j == pos else basis[i]
                blade = factor if blade is None else wedge_coeffs(blade, factor, n)
            for t, c in enumerate(blade):
                if c:
                    out[t] = out[t] + x * c
    return out


# ---------------------------------------------------------------------------
# point values


@dataclass(frozen=True)
class _GradedValue:
    """Shared layout and arithmetic of multivectors and multiforms."""

    dim: int
    coeffs: tuple[float, ...]

    _prefix = "e"

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise DimensionMismatch(f"dimension {self.dim} outside 1..{MAX_DIM}")
        if len(self.coeffs) != 1 << self.dim:
            raise DimensionMismatch(
                f"expected {1 << self.dim} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    # -- constructors

    @classmethod
    def zero(cls, dim: int):
        return cls(dim, (0.0,) * (1 << dim))

    @classmethod
    def scalar(cls, dim: int, value: float):
        c = [0.0] * (1 << dim)
        c[0] = value
        return cls(dim, tuple(c))

    @classmethod
    def blade(cls, dim: int, mask: int, coeff: float = 1.0):
        if not 0 <= mask < (1 << dim):
            raise DimensionMismatch(f"blade mask {mask} outside dimension {dim}")
        c = [0.0] * (1 << dim)
        c[mask] = coeff
        return cls(dim, tuple(c))

    @classmethod
    def from_blades(cls, dim: int, blades: dict[int, float]):
        c = [0.0] * (1 << dim)
        for mask, v in blades.items():
            if not 0 <= mask < (1 << dim):
                raise DimensionMismatch(f"blade mask {mask} outside dimension {dim}")
            c[mask] += v
        return cls(dim, tuple(c))

    # -- queries

    def __getitem__(self, mask: int) -> float:
        return self.coeffs[mask]

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs)

    def grades(self, tol: float = 0.0) -> set[int]:
        """Grades with a coefficient of magnitude above tol."""
        return {grade_of(m) for m, c in enumerate(self.coeffs) if abs(c) > tol}

    def norm_inf(self) -> float:
        return max(abs(c) for c in self.coeffs)

    # -- arithmetic

    def _check_dim(self, other: "_GradedValue"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check_dim(other)
        return type(self)(self.dim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check_dim(other)
        return type(self)(self.dim, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return type(self)(self.dim, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: float):
        return type(self)(self.dim, tuple(scalar * a for a in self.coeffs))

    __mul__ = __rmul__

    def wedge(self, other):
        self._check_dim(other)
        return type(self)(self.dim, tuple(wedge_coeffs(self.coeffs, other.coeffs, self.dim)))

    __xor__ = wedge

    def grade_part(self, k: int):
        if not 0 <= k <= self.dim:
            raise GradeError(f"grade {k} outside 0..{self.dim}")
        return type(self)(self.dim, tuple(grade_coeffs(self.coeffs, k, self.dim)))

    def reversion(self):
        return type(self)(self.dim, tuple(reversion_coeffs(self.coeffs, self.dim)))

    def __repr__(self):
        terms = [
            f"{c:g}*{blade_name(m, self._prefix)}"
            for m, c in enumerate(self.coeffs)
            if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"{type(self).__name__}({self.dim}: {body})"


class Multivector(_GradedValue):
    """Element of the exterior algebra over the frame basis e1..en."""

    _prefix = "e"


class Multiform(_GradedValue):
    """Element of the exterior algebra over the dual basis eps1..epsn."""

    _prefix = "eps"


def wedge(a, b):
    """Exterior product of two same-kind values."""
    return a.wedge(b)


def grade_part(a, k: int):
    """Grade-k part of a value."""
    return a.grade_part(k)


def reversion(a):
    """Grade-wise reversion of a value."""
    return a.reversion()


def duality_scalar(phi: Multiform, x: Multivector) -> float:
    """Duality scalar product <Phi, X>: coefficient dot product."""
    if phi.dim != x.dim:
        raise DimensionMismatch(f"dimensions differ: {phi.dim} vs {x.dim}")
    return float(pairing_coeff(phi.coeffs, x.coeffs, phi.dim))


def left_contract(a, b):
    """Left contracted product; the result has the kind of the second operand.

    ``left_contract(phi, x)`` is the multivector <Phi,X| with
    <<Phi,X|, Psi> = <X, ~Phi ^ Psi>; swapping the kinds gives the mirror
    multiform <X,Phi|.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    if isinstance(a, Multiform) and isinstance(b, Multivector):
        return Multivector(b.dim, tuple(lcontract_coeffs(a.coeffs, b.coeffs, a.dim)))
    if isinstance(a, Multivector) and isinstance(b, Multiform):
        return Multiform(b.dim, tuple(lcontract_coeffs(a.coeffs, b.coeffs, a.dim)))
    raise TypeError("left_contract expects one multiform and one multivector")


def right_contract(a, b):
    """Right contracted product; the result has the kind of the first operand.

    ``right_contract(phi, x)`` is the multiform |Phi,X> with
    <|Phi,X>, Y> = <Phi, Y ^ ~X>; swapping the kinds gives the mirror
    multivector |X,Phi>.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    if isinstance(a, Multiform) and isinstance(b, Multivector):
        return Multiform(a.dim, tuple(rcontract_coeffs(a.coeffs, b.coeffs, a.dim)))
    if isinstance(a, Multivector) and isinstance(b, Multiform):
        return Multivector(a.dim, tuple(rcontract_coeffs(a.coeffs, b.coeffs, a.dim)))
    raise TypeError("right_contract expects one multiform and one multivector")
