"""Hermitian-square certificates: construction, composition, verification.

A certificate is data whose correctness is re-checked by exact expansion;
construction and verification are deliberately independent code paths.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CertificateError, ShapeError, SingularMatrixError
from .scalars import (MonomialOrdering, ORDERINGS, RationalFunction, as_scalar,
                      monomial_square_class)
from .qforms import DiagonalForm, diagonalize, weakly_represents_one
from .involutions import (AlgebraWithInvolution, InvolutionSpec,
                          QuaternionAlgebra, _mat_mul, _mat_transpose, _mat_eq)
from .fdalgebra import StructureAlgebra, structure_algebra


@dataclass
class HermSqCertificate:
    """Claim: target = sum of sigma(x_i) x_i over the witnesses."""
    algebra: object
    target: object
    witnesses: list
    details: dict = field(default_factory=dict)


def verify_hermsq(cert):
    alg = cert.algebra
    total = alg.zero()
    for w in cert.witnesses:
        total = alg.add(total, alg.mul(alg.involution(w), w))
    return alg.equal(total, cert.target)


def _normalize_eps(eps, m):
    if isinstance(eps, str):
        eps = tuple(int(c) for c in eps)
    else:
        eps = tuple(int(c) for c in eps)
    if len(eps) != m or any(c not in (0, 1) for c in eps):
        raise CertificateError(f"bad weight selector {eps!r} for {m} weights")
    return eps


@dataclass
class WeightedCertificate:
    """Claim: target = sum over eps of alpha^eps * sum_i sigma(x)x.

    weights are central scalars in F; terms maps selectors eps (tuples of
    bits or bitstrings, one bit per weight) to witness lists.
    """
    algebra: object
    target: object
    weights: list
    terms: dict


def verify_weighted(cert):
    alg = cert.algebra
    weights = [as_scalar(w) if not isinstance(w, RationalFunction) else w
               for w in cert.weights]
    for w in weights:
        if w.is_zero():
            raise CertificateError("zero weight")
    m = len(weights)
    total = alg.zero()
    for eps, xs in cert.terms.items():
        eps = _normalize_eps(eps, m)
        coeff = as_scalar(1)
        for bit, w in zip(eps, weights):
            if bit:
                coeff = coeff * w
        part = alg.zero()
        for x in xs:
            part = alg.add(part, alg.mul(alg.involution(x), x))
        total = alg.add(total, alg.mul(alg.scalar(coeff), part))
    return alg.equal(total, cert.target)


def rewrite_weighted_to_pure(cert, weight_certs):
    """Fold hermitian-square certificates for the weights into the terms.

    weight_certs maps each weight alpha (used with a 1 bit) to a certificate
    for alpha * identity in the same algebra; alpha * sigma(x)x then equals
    sum_k sigma(y_k x)(y_k x).
    """
    alg = cert.algebra
    weights = [as_scalar(w) if not isinstance(w, RationalFunction) else w
               for w in cert.weights]
    m = len(weights)
    witnesses = []
    for eps, xs in cert.terms.items():
        eps = _normalize_eps(eps, m)
        current = list(xs)
        for bit, w in zip(eps, weights):
            if not bit:
                continue
            wc = weight_certs.get(w)
            if wc is None:
                raise CertificateError(f"no hermitian-square certificate for weight {w}")
            if not verify_hermsq(wc) or not alg.equal(wc.target, alg.scalar(w)):
                raise CertificateError(f"invalid certificate supplied for weight {w}")
            current = [alg.mul(y, x) for x in current for y in wc.witnesses]
        witnesses.extend(current)
    return HermSqCertificate(alg, cert.target, witnesses)


def prop41_certificates(quat, sigma):
    """Certified diagonalisation entries of the trace form of ((a,b)_F, sigma).

    Symplectic case (conjugation): entries 2*<1,-a,-b,ab> with witnesses
    1, i, j, k.  Orthogonal case (Int(u) twist, u pure): entries
    2*<1, Nrd(u), -Nrd(s), -Nrd(su)> where s is a pure quaternion
    anticommuting with u, found by solving the linear anticommutation
    equation; witnesses 1, u, s, us.
    """
    alg = AlgebraWithInvolution(quat, 1, sigma)
    if sigma.kind == "quat_conjugation":
        pieces = [(as_scalar(1), quat.one()), (-quat.a, quat.i()),
                  (-quat.b, quat.j()), (quat.a * quat.b, quat.k())]
    elif sigma.kind == "int_u_conj":
        u = sigma.u
        s = _anticommuting_pure(quat, u)
        su = s * u
        pieces = [(as_scalar(1), quat.one()), (u.nrd(), u),
                  (-s.nrd(), s), (-su.nrd(), su)]
    else:
        raise ShapeError("expected conjugation or an Int(u) twist of it")
    out = []
    two = as_scalar(2)
    for c, w in pieces:
        entry = two * c
        cert = HermSqCertificate(alg, alg.scalar(entry), [[[w]], [[w]]])
        if not verify_hermsq(cert):
            raise CertificateError("constructed certificate failed verification")
        out.append((entry, cert))
    return out


def _anticommuting_pure(quat, u):
    """First pure s (basis order i, j, k) with us + su = 0, content-cleared.

    For pure u, s the anticommutator is the scalar
    2(a u1 s1 + b u2 s2 - ab u3 s3).
    """
    a, b = quat.a, quat.b
    coeffs = [a * u.coords[1], b * u.coords[2], -a * b * u.coords[3]]
    pivot = next((t for t, c in enumerate(coeffs) if not c.is_zero()), None)
    if pivot is None:
        raise ShapeError("twisting element must be a nonzero pure quaternion")
    free = next(t for t in range(3) if t != pivot)
    sol = [as_scalar(0)] * 3
    sol[free] = coeffs[pivot]
    sol[pivot] = -coeffs[free]
    s = quat.elem(0, *sol)
    assert (u * s + s * u).is_zero()
    return s


def tensor_certificates(c1, c2):
    """Certificate for beta1*beta2 in the tensor product of the algebras."""
    sa1, conv1 = structure_algebra(c1.algebra)
    sa2, conv2 = structure_algebra(c2.algebra)
    b1 = sa1.scalar_part(conv1(c1.target))
    b2 = sa2.scalar_part(conv2(c2.target))
    if b1 is None or b2 is None:
        raise CertificateError("tensor composition needs central scalar targets")
    sa = sa1.tensor(sa2)
    witnesses = [tuple(p * q for p in conv1(x) for q in conv2(y))
                 for x in c1.witnesses for y in c2.witnesses]
    return HermSqCertificate(sa, sa.scalar(b1 * b2), witnesses)


# -- skew-symmetric congruence and the -1 certificate ----------------------

def _standard_skew_block(n):
    b = [[as_scalar(0) for _ in range(n)] for _ in range(n)]
    for t in range(0, n, 2):
        b[t][t + 1] = as_scalar(1)
        b[t + 1][t] = as_scalar(-1)
    return b


def skew_congruence(s):
    """P with P^t S P equal to the standard skew block matrix B.

    Greedy pivoting: the first nonzero entry of the current row becomes the
    (t, t+1) pivot of the block.
    """
    n = len(s)
    m = [[as_scalar(v) for v in row] for row in s]
    if not _mat_eq(_mat_transpose(m), [[-v for v in row] for row in m]):
        raise ShapeError("matrix is not skew-symmetric")
    if n % 2 != 0:
        raise SingularMatrixError("odd-size skew-symmetric matrices are singular")
    p = [[as_scalar(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def swap(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        m[i], m[j] = m[j], m[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    def scale(i, c):
        for row in m:
            row[i] = row[i] * c
        m[i] = [v * c for v in m[i]]
        for row in p:
            row[i] = row[i] * c

    def addmul(dst, src, c):
        for row in m:
            row[dst] = row[dst] + c * row[src]
        m[dst] = [v + c * w for v, w in zip(m[dst], m[src])]
        for row in p:
            row[dst] = row[dst] + c * row[src]

    for t in range(0, n, 2):
        j = next((k for k in range(t + 1, n) if not m[t][k].is_zero()), None)
        if j is None:
            raise SingularMatrixError("skew matrix is singular")
        if j != t + 1:
            swap(j, t + 1)
        scale(t + 1, m[t][t + 1].inverse())
        for k in range(t + 2, n):
            if not m[t][k].is_zero():
                addmul(k, t + 1, -m[t][k])
            if not m[t + 1][k].is_zero():
                addmul(k, t, m[t + 1][k])
    return p


def symplectic_minus_one(s):
    """Single-witness certificate for -1 in (M_n(F), Int(S) o transpose).

    S skew-symmetric and nonsingular, n even.  With P^t S P = B (standard
    blocks), X the blockwise antidiagonal satisfying X^t B X = B^{-1}, and
    Y = P X P^t, the witness W = S Y satisfies sigma(W) W = -I.  The
    intermediate matrices are recorded under details.
    """
    n = len(s)
    s = [[as_scalar(v) for v in row] for row in s]
    p = skew_congruence(s)
    b = _standard_skew_block(n)
    x = [[as_scalar(0) for _ in range(n)] for _ in range(n)]
    for t in range(0, n, 2):
        x[t][t + 1] = as_scalar(1)
        x[t + 1][t] = as_scalar(1)
    zero = as_scalar(0)
    y = _mat_mul(_mat_mul(p, x, zero), _mat_transpose(p), zero)
    w = _mat_mul(s, y, zero)
    alg = AlgebraWithInvolution("F", n, InvolutionSpec.int_skew(s))
    cert = HermSqCertificate(alg, alg.scalar(-1), [w],
                             details={"P": p, "B": b, "X": x, "Y": y, "S": s})
    if not verify_hermsq(cert):
        raise CertificateError("symplectic construction failed verification")
    return cert


# -- counterexample pipelines ----------------------------------------------

@dataclass
class TotalPositivityWitness:
    """a = Trd(sigma(b)b) for the recorded b, or a hermitian-square certificate."""
    algebra: object
    target: object
    witness: object = None
    certificate: object = None

    def verify(self):
        if self.certificate is not None:
            return (verify_hermsq(self.certificate)
                    and self.algebra.equal(self.certificate.target,
                                           self.algebra.scalar(self.target)))
        got = self.algebra.trd(self.algebra.hermitian_square(self.witness))
        return got == self.target


@dataclass
class CounterexampleReport:
    algebra: object
    element: object
    positivity_witness: TotalPositivityWitness
    signatures: dict
    sigma_orderings: list
    entry_form: DiagonalForm
    weak_rep: object
    verdict: bool


def counterexample_pipeline(alpha, beta, base="F"):
    """Check whether alpha*beta is totally positive yet not a hermitian-square sum.

    The algebra is M_3 over F or over the given quaternion algebra, with the
    adjoint involution of <alpha, beta, alpha*beta>.  The verdict is true
    when the trace witness for alpha*beta verifies, the trace form is
    definite at some monomial ordering, and <alpha, beta, alpha*beta> does
    not weakly represent 1 (the (3,3)-entry obstruction).
    """
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    monomial_square_class(alpha)
    monomial_square_class(beta)
    q = DiagonalForm([alpha, beta, alpha * beta])
    if isinstance(base, QuaternionAlgebra):
        alg = AlgebraWithInvolution(base, 3, InvolutionSpec.adjoint_hermitian(q))
        norm_form = DiagonalForm([as_scalar(1), -base.a, -base.b, base.a * base.b])
        entry_form = DiagonalForm([beta]).tensor(norm_form).perp(
            DiagonalForm([alpha]).tensor(norm_form)).perp(norm_form)
    else:
        alg = AlgebraWithInvolution("F", 3, InvolutionSpec.adjoint_diag(q))
        entry_form = DiagonalForm([beta, alpha, as_scalar(1)])
    target = alpha * beta
    if isinstance(base, QuaternionAlgebra):
        # the reduced trace of a quaternion scalar c is 2c, so the witness
        # carries a factor (1+i)/2 of reduced norm 1/2 (needs i^2 = -1)
        if not base.a == as_scalar(-1):
            raise ShapeError("quaternion base must have i^2 = -1")
        half_alpha = alpha / as_scalar(2)
        b = alg.unit(0, 1, base.elem(half_alpha, half_alpha))
    else:
        b = alg.unit(0, 1, alpha)
    positivity = TotalPositivityWitness(alg, target, witness=b)
    diag = diagonalize(alg.trace_form()).form
    signatures = {p: diag.signature(p) for p in ORDERINGS}
    dim = len(diag.entries)
    orderings = [p for p in ORDERINGS if signatures[p] == dim]
    weak = weakly_represents_one(q)
    verdict = positivity.verify() and bool(orderings) and not weak.represents
    return CounterexampleReport(alg, target, positivity, signatures, orderings,
                                entry_form, weak, verdict)


# -- exact PSD test over Q --------------------------------------------------

def _as_fraction(v):
    if isinstance(v, RationalFunction):
        if not (v.num.is_constant() and v.den.is_constant()):
            raise ShapeError("expected a rational constant")
        return Fraction(v.num.constant()) / Fraction(v.den.constant())
    return Fraction(v)


def psd_symmetric_rational(m):
    """Exact positive semidefiniteness of a symmetric rational matrix."""
    a = [[_as_fraction(v) for v in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ShapeError("matrix is not symmetric")
    while a:
        pivot = a[0][0]
        if pivot < 0:
            return False
        if pivot == 0:
            if any(v != 0 for v in a[0]):
                return False
            a = [row[1:] for row in a[1:]]
            continue
        a = [[a[i][j] - a[i][0] * a[0][j] / pivot
              for j in range(1, len(a))] for i in range(1, len(a))]
    return True
