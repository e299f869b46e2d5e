"""First cohomology H^1(G, M) for a finitely presented G acting on M = Z^d.

The cocycle lattice Z^1 is the integer kernel of the relator condition
matrix, the coboundary lattice B^1 is the column span of the stacked
(rho(g) - 1), and H^1 = Z^1 / B^1 is presented by Smith reduction of the
coefficient matrix of B^1 in a kernel basis of Z^1.  Everything is exact.

The closed forms at the end of the module give the expected free ranks for
the projective modular group and its extension by the swap, together with
the dimension counts they are assembled from.  Each formula checks its own
divisibility, so a non-integral value raises instead of silently rounding.
"""

from __future__ import annotations

import json
from math import gcd, lcm

from .linalg import (
    AbelianInvariants,
    IntMatrix,
    hstack,
    invert_unimodular,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_integer,
    vstack,
)
from .polyrep import GEN_S, GEN_T, GEN_W, Mat2, eta, rho_matrix
from .presentations import (
    Embedding,
    MatrixAssignment,
    Presentation,
    Word,
    builtin,
    cocycle_transport,
    evaluate_word,
    relator_condition_matrix,
    rep_inverses,
)


class Cocycle:
    """A 1-cocycle, stored as its values on the presentation's generators."""

    __slots__ = ("presentation", "values")

    def __init__(self, presentation, values):
        values = tuple(tuple(int(x) for x in v) for v in values)
        if len(values) != len(presentation.generators):
            raise ValueError("one value vector per generator required")
        dims = {len(v) for v in values}
        if len(dims) > 1:
            raise ValueError("value vectors must share a dimension")
        self.presentation = presentation
        self.values = values

    @property
    def dim(self):
        return len(self.values[0]) if self.values else 0

    def stacked(self):
        out = []
        for v in self.values:
            out.extend(v)
        return out

    @classmethod
    def from_stacked(cls, presentation, vec, dim):
        k = len(presentation.generators)
        if len(vec) != k * dim:
            raise ValueError("stacked vector has the wrong length")
        return cls(presentation,
                   [vec[i * dim:(i + 1) * dim] for i in range(k)])

    def __add__(self, other):
        if self.presentation is not other.presentation \
                and self.presentation.generators != other.presentation.generators:
            raise ValueError("cocycles live on different presentations")
        return Cocycle(self.presentation,
                       [[x + y for x, y in zip(u, v)]
                        for u, v in zip(self.values, other.values)])

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, k):
        return Cocycle(self.presentation,
                       [[x * k for x in v] for v in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.values == other.values \
            and self.presentation.generators == other.presentation.generators

    def __repr__(self):
        return "Cocycle(%r, %r)" % (self.presentation.name, self.values)


class H1Result:
    """Invariants of H^1 together with cocycles realizing the generators."""

    __slots__ = ("invariants", "free_basis", "torsion_basis",
                 "presentation", "rep")

    def __init__(self, invariants, free_basis, torsion_basis, presentation, rep):
        self.invariants = invariants
        self.free_basis = list(free_basis)
        self.torsion_basis = list(torsion_basis)  # pairs (cocycle, order)
        self.presentation = presentation
        self.rep = rep


def coboundary_matrix(rep):
    """Stacked (rho(g) - 1) for all generators; columns span B^1."""
    d = rep[0].rows
    eye = IntMatrix.identity(d)
    return vstack([m - eye for m in rep])


def cocycle_basis(presentation, rep):
    """A lattice basis of Z^1, as columns of the returned matrix."""
    return kernel_basis(relator_condition_matrix(presentation, rep))


def h1(presentation, rep):
    """H^1 of the presented group acting through rep, with basis lifts."""
    d = rep[0].rows
    K = cocycle_basis(presentation, rep)
    B = coboundary_matrix(rep)
    snf_k = smith_normal_form(K)
    if snf_k.rank() != K.cols:
        raise RuntimeError("kernel basis unexpectedly dependent")
    diag_k = snf_k.diagonal()

    def in_basis_coords(col):
        c = snf_k.U.mulvec(col)
        z = [0] * K.cols
        for i in range(K.rows):
            dk = diag_k[i] if i < len(diag_k) else 0
            if dk:
                q, r = divmod(c[i], dk)
                if r:
                    raise ValueError("vector outside the cocycle lattice")
                z[i] = q
            elif c[i]:
                raise ValueError("vector outside the cocycle lattice")
        return snf_k.V.mulvec(z)

    C = IntMatrix.from_columns([in_basis_coords(col) for col in B.columns()],
                               rows=K.cols)
    snf_c = smith_normal_form(C)
    diag_c = [x for x in snf_c.diagonal() if x]
    r = len(diag_c)
    torsion = [x for x in diag_c if x > 1]
    invariants = AbelianInvariants(K.cols - r, tuple(torsion))

    u_inv = invert_unimodular(snf_c.U)
    torsion_basis = []
    free_basis = []
    for i in range(r):
        if diag_c[i] > 1:
            vec = K.mulvec(u_inv.column(i))
            torsion_basis.append(
                (Cocycle.from_stacked(presentation, vec, d), diag_c[i]))
    for i in range(r, K.cols):
        vec = K.mulvec(u_inv.column(i))
        free_basis.append(Cocycle.from_stacked(presentation, vec, d))
    return H1Result(invariants, free_basis, torsion_basis, presentation, rep)


def is_coboundary(presentation, rep, cocycle):
    """The form P with b = (rho - 1)P when one exists, else None."""
    if len(rep) != len(presentation.generators):
        raise ValueError("one matrix per generator required")
    return solve_integer(coboundary_matrix(rep), cocycle.stacked())


def class_order(presentation, rep, cocycle):
    """Order of the class of the cocycle in H^1; None means infinite."""
    d = rep[0].rows
    K = cocycle_basis(presentation, rep)
    B = coboundary_matrix(rep)
    snf_k = smith_normal_form(K)
    diag_k = snf_k.diagonal()

    def coords(col):
        c = snf_k.U.mulvec(col)
        z = [0] * K.cols
        for i in range(K.rows):
            dk = diag_k[i] if i < len(diag_k) else 0
            if dk:
                q, rr = divmod(c[i], dk)
                if rr:
                    raise ValueError("not a cocycle for this presentation")
                z[i] = q
            elif c[i]:
                raise ValueError("not a cocycle for this presentation")
        return snf_k.V.mulvec(z)

    x = coords(cocycle.stacked())
    C = IntMatrix.from_columns([coords(col) for col in B.columns()],
                               rows=K.cols)
    snf_c = smith_normal_form(C)
    diag_c = [v for v in snf_c.diagonal() if v]
    r = len(diag_c)
    y = snf_c.U.mulvec(x)
    if any(y[i] for i in range(r, K.cols)):
        return None
    m = 1
    for i in range(r):
        m = lcm(m, diag_c[i] // gcd(diag_c[i], y[i]))
    # sanity: m * b really is a coboundary
    assert solve_integer(B, [m * v for v in cocycle.stacked()]) is not None
    return m


def word_matrix(word, rep, rep_inv=None):
    """Product of representation matrices along a word."""
    if rep_inv is None:
        rep_inv = rep_inverses(rep)
    d = rep[0].rows
    out = IntMatrix.identity(d)
    for g, s in word.letters:
        out = out * (rep[g] if s == 1 else rep_inv[g])
    return out


def restrict(cocycle, embedding, sub_presentation, ambient_rep):
    """Pull a cocycle back along a subgroup embedding.

    The restricted cocycle's value on a subgroup generator is the transported
    value of the ambient cocycle on the corresponding word.  The result is
    checked against the subgroup's relator conditions.
    """
    rep_inv = rep_inverses(ambient_rep)
    values = [cocycle_transport(w, ambient_rep, cocycle.values, rep_inv)
              for w in embedding.words]
    out = Cocycle(sub_presentation, values)
    if sub_presentation.relators:
        sub_rep = [word_matrix(w, ambient_rep, rep_inv)
                   for w in embedding.words]
        R = relator_condition_matrix(sub_presentation, sub_rep)
        if R.mulvec(out.stacked()) != [0] * R.rows:
            raise RuntimeError("restriction produced a non-cocycle")
    return out


def restriction_image_matrix(ambient_presentation, ambient_rep,
                             sub_presentation, embedding):
    """Columns: restrictions of a Z^1 basis of the ambient group."""
    d = ambient_rep[0].rows
    K = cocycle_basis(ambient_presentation, ambient_rep)
    rep_inv = rep_inverses(ambient_rep)
    cols = []
    for j in range(K.cols):
        b = Cocycle.from_stacked(ambient_presentation, K.column(j), d)
        values = [cocycle_transport(w, ambient_rep, b.values, rep_inv)
                  for w in embedding.words]
        stacked = []
        for v in values:
            stacked.extend(v)
        cols.append(stacked)
    return IntMatrix.from_columns(cols, rows=len(embedding.words) * d)


def restriction_cokernel(ambient_presentation, ambient_rep,
                         sub_presentation, sub_rep, embedding):
    """Invariants of H^1(subgroup) / image of H^1(ambient group)."""
    Z_sub = cocycle_basis(sub_presentation, sub_rep)
    B_sub = coboundary_matrix(sub_rep)
    RZ = restriction_image_matrix(ambient_presentation, ambient_rep,
                                  sub_presentation, embedding)
    from .linalg import quotient_invariants
    return quotient_invariants(Z_sub, hstack([RZ, B_sub]))


class Overgroup:
    """An overgroup with the embedding of the subgroup into it."""

    __slots__ = ("name", "presentation", "assignment", "embedding")

    def __init__(self, name, presentation, assignment, embedding):
        self.name = name
        self.presentation = presentation
        self.assignment = assignment
        self.embedding = embedding


def _refutation_from_snf(M, target):
    # A non-membership voucher for target outside the column lattice of M:
    # a functional u and modulus m with u.M = 0 mod m but u.target != 0 mod m
    # (m = 0 means exact vanishing).  Rows of the Smith transform provide one.
    snf = smith_normal_form(M)
    diag = snf.diagonal()
    c = snf.U.mulvec(target)
    for i in range(M.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i]:
                return list(snf.U.data[i]), 0
        elif c[i] % d:
            return list(snf.U.data[i]), d
    return None


def certify_nonextendable(sub_presentation, sub_assignment, n, cocycle,
                          overgroups):
    """Build a certificate that no listed overgroup's cohomology hits the class.

    For each overgroup L the membership question "is the cocycle, modulo
    coboundaries, the restriction of a cocycle on L" is a lattice membership
    problem.  When it is solvable the cocycle extends and ValueError is
    raised; otherwise a Smith-form functional refuting membership is stored.
    The certificate re-verifies by pure integer arithmetic from its own data.
    """
    sub_rep = sub_assignment.rep(n)
    R = relator_condition_matrix(sub_presentation, sub_rep)
    if R.mulvec(cocycle.stacked()) != [0] * R.rows:
        raise ValueError("not a cocycle")
    B_sub = coboundary_matrix(sub_rep)
    entries = []
    for og in overgroups:
        amb_rep = og.assignment.rep(n)
        RZ = restriction_image_matrix(og.presentation, amb_rep,
                                      sub_presentation, og.embedding)
        M = hstack([RZ, B_sub])
        if solve_integer(M, cocycle.stacked()) is not None:
            raise ValueError("the class extends to overgroup %r" % og.name)
        ref = _refutation_from_snf(M, cocycle.stacked())
        assert ref is not None
        functional, modulus = ref
        pairing = sum(u * v for u, v in zip(functional, cocycle.stacked()))
        entries.append({
            "name": og.name,
            "generators": list(og.presentation.generators),
            "relators": [w.format(og.presentation.generators)
                         for w in og.presentation.relators],
            "projective": og.assignment.projective,
            "matrices": [list(m.entries()) for m in og.assignment.matrices],
            "embedding": [w.format(og.presentation.generators)
                          for w in og.embedding.words],
            "refutation": {"functional": functional, "modulus": modulus,
                           "pairing": pairing},
        })
    payload = {
        "format": CERTIFICATE_FORMAT,
        "kind": "nonextendable",
        "degree": n,
        "subgroup": _presentation_payload(sub_presentation, sub_assignment),
        "cocycle": {"values": [list(v) for v in cocycle.values]},
        "overgroups": entries,
    }
    return Certificate(payload)


def certify_noncoboundary(presentation, assignment, n, cocycle):
    """A certificate that the cocycle is not a coboundary."""
    rep = assignment.rep(n)
    R = relator_condition_matrix(presentation, rep)
    if R.mulvec(cocycle.stacked()) != [0] * R.rows:
        raise ValueError("not a cocycle")
    B = coboundary_matrix(rep)
    if solve_integer(B, cocycle.stacked()) is not None:
        raise ValueError("the cocycle is a coboundary")
    functional, modulus = _refutation_from_snf(B, cocycle.stacked())
    pairing = sum(u * v for u, v in zip(functional, cocycle.stacked()))
    payload = {
        "format": CERTIFICATE_FORMAT,
        "kind": "noncoboundary",
        "degree": n,
        "subgroup": _presentation_payload(presentation, assignment),
        "cocycle": {"values": [list(v) for v in cocycle.values]},
        "refutation": {"functional": functional, "modulus": modulus,
                       "pairing": pairing},
    }
    return Certificate(payload)


CERTIFICATE_FORMAT = "modh1-certificate-1"


def _presentation_payload(presentation, assignment):
    return {
        "name": presentation.name,
        "generators": list(presentation.generators),
        "relators": [w.format(presentation.generators)
                     for w in presentation.relators],
        "projective": assignment.projective,
        "matrices": [list(m.entries()) for m in assignment.matrices],
    }


def _presentation_from_payload(payload):
    pres = Presentation(payload["name"], payload["generators"], ())
    relators = [pres.parse_word(w) for w in payload["relators"]]
    pres = Presentation(payload["name"], payload["generators"], relators)
    assignment = MatrixAssignment([Mat2(*e) for e in payload["matrices"]],
                                  projective=payload["projective"])
    return pres, assignment


class Certificate:
    """A self-contained, re-checkable claim about a cocycle class."""

    __slots__ = ("payload",)

    def __init__(self, payload):
        self.payload = payload

    def to_json(self):
        return json.dumps(self.payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))

    def verify(self):
        """Re-check every claim from stored data; returns a check list."""
        checks = []

        def check(name, ok, expected="ok", actual=None):
            checks.append({"name": name, "pass": bool(ok),
                           "expected": expected,
                           "actual": actual if actual is not None
                           else ("ok" if ok else "failed")})

        p = self.payload
        if p.get("format") != CERTIFICATE_FORMAT:
            check("format", False, CERTIFICATE_FORMAT, p.get("format"))
            return checks
        kind = p.get("kind")
        if kind == "membership-sample":
            self._verify_membership_sample(check)
            return checks
        n = p["degree"]
        sub_pres, sub_assign = _presentation_from_payload(p["subgroup"])
        try:
            sub_assign.check(sub_pres)
            check("subgroup relators", True)
        except ValueError as e:
            check("subgroup relators", False, actual=str(e))
            return checks
        sub_rep = sub_assign.rep(n)
        b = Cocycle(sub_pres, p["cocycle"]["values"])
        R = relator_condition_matrix(sub_pres, sub_rep)
        check("cocycle condition", R.mulvec(b.stacked()) == [0] * R.rows)
        B_sub = coboundary_matrix(sub_rep)
        if kind == "noncoboundary":
            self._verify_refutation(check, "coboundary refutation",
                                    p["refutation"], B_sub, b.stacked())
            return checks
        if kind != "nonextendable":
            check("kind", False, "nonextendable", kind)
            return checks
        for og in p["overgroups"]:
            label = og["name"]
            pres, assign = _presentation_from_payload(og)
            try:
                assign.check(pres)
                check("%s relators" % label, True)
            except ValueError as e:
                check("%s relators" % label, False, actual=str(e))
                continue
            words = [pres.parse_word(w) for w in og["embedding"]]
            # embedding words must evaluate to the stored subgroup matrices
            target = [Mat2(*e) for e in p["subgroup"]["matrices"]]
            ok = all(evaluate_word(w, assign.matrices) == m
                     for w, m in zip(words, target))
            check("%s embedding" % label, ok)
            amb_rep = assign.rep(n)
            emb = Embedding(pres, words)
            RZ = restriction_image_matrix(pres, amb_rep, sub_pres, emb)
            M = hstack([RZ, B_sub])
            self._verify_refutation(check, "%s refutation" % label,
                                    og["refutation"], M, b.stacked())
        return checks

    @staticmethod
    def _verify_refutation(check, label, ref, M, target):
        u = [int(x) for x in ref["functional"]]
        m = int(ref["modulus"])
        if len(u) != M.rows:
            check(label, False, "functional length %d" % M.rows, len(u))
            return
        um = [sum(u[i] * M.data[i][j] for i in range(M.rows))
              for j in range(M.cols)]
        ub = sum(x * y for x, y in zip(u, target))
        if m == 0:
            ok = all(x == 0 for x in um) and ub != 0
        else:
            ok = all(x % m == 0 for x in um) and ub % m != 0
        check(label, ok, "u.M = 0, u.b != 0 (mod %d)" % m,
              "u.b = %d" % ub)

    def _verify_membership_sample(self, check):
        # deferred: the congruence module re-runs the sampled word test
        from .congruence import verify_membership_sample_payload
        return verify_membership_sample_payload(self.payload, check)


def make_ba(n, a, group="sl2"):
    """The cocycle with value a(X^n - Y^n) on the order 4 generator.

    Defined for even n; vanishes on the order 6 generator.  The value lies in
    ker(S + 1), so the transported relator values all vanish.
    """
    if n < 2 or n % 2:
        raise ValueError("even n >= 2 required")
    if group not in ("sl2", "psl2"):
        raise ValueError("group must be sl2 or psl2")
    pres, assignment = builtin(group)
    v = [0] * (n + 1)
    v[0] = a
    v[n] = -a
    b = Cocycle(pres, [v, [0] * (n + 1)])
    rep = assignment.rep(n)
    R = relator_condition_matrix(pres, rep)
    assert R.mulvec(b.stacked()) == [0] * R.rows
    return b


def make_beps(n, eps, group="gl2"):
    """The symmetric coordinate cocycles on the swap-extended group.

    eps is a vector of length beps_count(n); the value on the order 4
    generator is the symmetric form with coefficients eps_k at the odd
    exponent pairs (and, when n = 2 mod 4, eps_m on the middle monomial).
    The values on the other generators are zero.  Distinct 0/1 vectors give
    non-cohomologous cocycles, which is where the 2^m lower bound on the
    2-primary torsion comes from; the individual class orders vary and are
    infinite once the free rank is positive.
    """
    if n < 2 or n % 2:
        raise ValueError("even n >= 2 required")
    if group not in ("gl2", "pgl2"):
        raise ValueError("group must be gl2 or pgl2")
    m = beps_count(n)
    eps = [int(e) for e in eps]
    if len(eps) != m:
        raise ValueError("expected %d epsilon entries" % m)
    v = [0] * (n + 1)
    if n % 4 == 0:
        for k in range(1, m + 1):
            v[2 * k - 1] += eps[k - 1]
            v[n - 2 * k + 1] += eps[k - 1]
    else:
        for k in range(1, m):
            v[2 * k - 1] += eps[k - 1]
            v[n - 2 * k + 1] += eps[k - 1]
        v[n // 2] += eps[m - 1]
    pres, assignment = builtin(group)
    zero = [0] * (n + 1)
    b = Cocycle(pres, [v, zero, zero])
    rep = assignment.rep(n)
    R = relator_condition_matrix(pres, rep)
    assert R.mulvec(b.stacked()) == [0] * R.rows
    return b


def beps_relation_lattice(n, group="gl2"):
    """Generators of the eps vectors whose symmetric cocycle is a coboundary.

    Columns of the returned m x r matrix span the lattice of integer eps
    with b_eps in B^1.  If every generator is even, the 2^m classes of 0/1
    vectors are pairwise distinct: a difference of two such vectors that is
    a coboundary would be a lattice point with an odd entry.
    """
    m = beps_count(n)
    pres, assignment = builtin(group)
    rep = assignment.rep(n)
    units = []
    for k in range(m):
        e = [0] * m
        e[k] = 1
        units.append(make_beps(n, e, group=group).stacked())
    E = IntMatrix.from_columns(units, rows=len(pres.generators) * (n + 1))
    ker = kernel_basis(hstack([E, coboundary_matrix(rep)]))
    return IntMatrix([ker.data[i] for i in range(m)], cols=ker.cols)


def _even_only(n):
    if n < 0 or n % 2:
        raise ValueError("even n required")


def _exact_div(num, den):
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("closed form %d/%d is not integral" % (num, den))
    return q


def _sign_half(n):
    # (-1)^(n/2 + 1): -1 when n = 0 mod 4, +1 when n = 2 mod 4
    return -1 if n % 4 == 0 else 1


def rank_psl2(n):
    """Free rank of H^1 of the projective modular group, even n."""
    _even_only(n)
    return _exact_div(n + 1 + 3 * _sign_half(n) - 4 * eta(n), 6)


def rank_gl2(n):
    """Free rank of H^1 of the swap-extended modular group, even n."""
    _even_only(n)
    return _exact_div(n - 5 + 3 * _sign_half(n) - 4 * eta(n), 12)


def cokernel_rank(n):
    """Free rank of H^1(index 2 subgroup) / restricted classes, even n."""
    _even_only(n)
    return _exact_div(n + 7 + 3 * _sign_half(n) - 4 * eta(n), 12)


def normalized_cocycle_dim(n):
    """dim ker(S + 1): cocycles normalized to vanish on the order 6 generator."""
    _even_only(n)
    return _exact_div(n + 1 + _sign_half(n), 2)


def t_fixed_dim(n):
    """dim ker(T - 1): forms fixed by the order 6 generator."""
    _even_only(n)
    return _exact_div(n + 1 + 2 * eta(n), 3)


def normalized_sym_dim(n):
    """dim of the swap-symmetric part of ker(S + 1)."""
    _even_only(n)
    return _exact_div(n + 1 + _sign_half(n), 4)


def t_fixed_sym_dim(n):
    """dim of the swap-symmetric part of ker(T - 1)."""
    _even_only(n)
    return _exact_div(n + 4 + 2 * eta(n), 6)


def beps_count(n):
    """Number m of coordinate slots in make_beps.

    The 2^m classes of 0/1 vectors are pairwise distinct in H^1, so the
    2-primary torsion of the swap-extended group has order at least 2^m.
    """
    _even_only(n)
    return n // 4 if n % 4 == 0 else (n + 2) // 4


def _stacked_kernel_dim(mats):
    return mats[0].cols - rank(vstack(mats))


def w_invariant_h1_rank(n):
    """Free rank of H^1 of the swap-extended group via swap invariants.

    Restriction to the index 2 projective modular subgroup is rationally
    injective with image the swap-invariant classes.  Normalized cocycles
    (vanishing on the order 6 generator) are identified with ker(S + 1) by
    evaluation at S, the swap acts there by plain multiplication, and the
    invariant coboundaries correspond to swap-symmetric T-fixed forms.  So
    the rank is the difference of two kernel dimensions, computed here from
    honest kernels rather than the closed forms.
    """
    _even_only(n)
    from .polyrep import common_fixed_dim
    if common_fixed_dim([GEN_S, GEN_T], n) != 0:
        raise ValueError("nonzero invariant forms; normalization fails")
    d = n + 1
    eye = IntMatrix.identity(d)
    S = rho_matrix(GEN_S, n)
    T = rho_matrix(GEN_T, n)
    W = rho_matrix(GEN_W, n)
    sym_normalized = _stacked_kernel_dim([S + eye, W - eye])
    sym_fixed = _stacked_kernel_dim([T - eye, W - eye])
    return sym_normalized - sym_fixed
