"""Congruence subgroups of the modular group.

Gamma_0(N) and Gamma_1(N) membership, the fractional cocycle that
characterizes Gamma_1(N), coset tables of the projective Gamma_0-bar(p)
through the action on the projective line over F_p, torsion obstructions,
and Schreier free bases with their lifts into the integer matrix group.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .polyrep import GEN_EPS, GEN_S, GEN_T, Mat2
from .presentations import (
    Embedding,
    MatrixAssignment,
    Presentation,
    Word,
    builtin,
    evaluate_word,
)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def legendre(a, p):
    """Legendre symbol (a/p) by the Euler criterion."""
    if p <= 2 or not _is_prime(p):
        raise ValueError("odd prime required")
    r = pow(a % p, (p - 1) // 2, p)
    if r == p - 1:
        return -1
    return r


def gamma0_member(g, N):
    """Lower-left entry divisible by N."""
    if g.det() != 1:
        raise ValueError("determinant 1 required")
    return g.c % N == 0


def gamma1_member(g, N):
    """Lower-left divisible by N and both diagonal entries 1 mod N."""
    if g.det() != 1:
        raise ValueError("determinant 1 required")
    return g.c % N == 0 and g.a % N == 1 and g.d % N == 1


def bN(g, N):
    """The fractional vector g.(1/N, 0) - (1/N, 0) and its integrality.

    The vector is ((a-1)/N, c/N); it is integral exactly for members of
    Gamma_1(N).  One direction is immediate; for the other, a = 1 and c = 0
    mod N force d = 1 mod N through the determinant.
    """
    if g.det() != 1:
        raise ValueError("determinant 1 required")
    value = (Fraction(g.a - 1, N), Fraction(g.c, N))
    integral = value[0].denominator == 1 and value[1].denominator == 1
    return value, integral


_LETTER_S = 0
_LETTER_T = 1


class CosetTable:
    """Left cosets of the projective Gamma_0-bar(p), as points of P^1(F_p).

    Point labels are 0..p-1 for (x:1) and p for (1:0).  The base point is
    (1:0), whose stabilizer is exactly the c = 0 mod p subgroup.  perm_s
    and perm_t give the left action of the two projective generators,
    transversal[i] is a word with transversal[i] . base = point i.
    """

    __slots__ = ("p", "points", "base", "perm_s", "perm_t", "transversal")

    def __init__(self, p, points, base, perm_s, perm_t, transversal):
        self.p = p
        self.points = points
        self.base = base
        self.perm_s = perm_s
        self.perm_t = perm_t
        self.transversal = transversal
        n = len(points)
        if n != p + 1:
            raise ValueError("expected %d projective points" % (p + 1))
        for perm in (perm_s, perm_t):
            if sorted(perm) != list(range(n)):
                raise ValueError("generator action is not a bijection")

    def apply(self, g, point):
        """Image of a point under an integer matrix, projectively mod p."""
        p = self.p
        if point == p:
            u, v = 1, 0
        else:
            u, v = point, 1
        nu = (g.a * u + g.b * v) % p
        nv = (g.c * u + g.d * v) % p
        if nv == 0:
            if nu == 0:
                raise ValueError("matrix is singular mod p")
            return p
        return (nu * pow(nv, p - 2, p)) % p

    def to_payload(self):
        pres, _ = builtin("psl2")
        return {
            "prime": self.p,
            "points": list(self.points),
            "base": self.base,
            "perm_s": list(self.perm_s),
            "perm_t": list(self.perm_t),
            "transversal": [w.format(pres.generators) for w in self.transversal],
        }


def coset_table(p):
    """Coset table of the c = 0 mod p projective subgroup, index p+1.

    The transversal comes from a breadth-first search from the base point
    with letter order S, T, T^-1; transversal words are geodesic and every
    suffix of one is again a transversal word.
    """
    if not _is_prime(p):
        raise ValueError("%r is not prime" % (p,))
    points = list(range(p + 1))
    base = p
    table = CosetTable.__new__(CosetTable)
    table.p = p

    t_inv = GEN_T.inv()
    letters = [(GEN_S, (_LETTER_S, 1)), (GEN_T, (_LETTER_T, 1)),
               (t_inv, (_LETTER_T, -1))]
    transversal = [None] * (p + 1)
    transversal[base] = Word(())
    queue = [base]
    seen = 1
    while queue:
        nxt = []
        for x in queue:
            for mat, letter in letters:
                y = table.apply(mat, x)
                if transversal[y] is None:
                    transversal[y] = Word((letter,)) * transversal[x]
                    nxt.append(y)
                    seen += 1
        queue = nxt
    if seen != p + 1:
        raise RuntimeError("action is not transitive")

    perm_s = [table.apply(GEN_S, x) for x in points]
    perm_t = [table.apply(GEN_T, x) for x in points]
    return CosetTable(p, points, base, perm_s, perm_t, transversal)


def torsion_criterion(p):
    """True when the mod p projective stabilizer group is torsion-free.

    Order 2 elements need -1 to be a square mod p, order 3 elements need
    -3 to be one; both fail together exactly when p = 11 mod 12.
    """
    if p <= 3 or not _is_prime(p):
        raise ValueError("prime p > 3 required")
    return legendre(-1, p) == -1 and legendre(-3, p) == -1


def find_torsion(p):
    """A torsion element with lower-left entry 0 mod p, or None.

    For p = 1 mod 4 conjugating the order 4 generator by (1,0;x,1) with
    x^2 = -1 mod p gives lower-left x^2 + 1; for p = 1 mod 3 conjugating
    the order 6 generator by (1,0;z,1) with z^2 - z + 1 = 0 mod p gives
    lower-left z^2 - z + 1.  Both vanish mod p by construction.
    """
    if p <= 3 or not _is_prime(p):
        raise ValueError("prime p > 3 required")
    if legendre(-1, p) == 1:
        for x in range(1, p):
            if (x * x + 1) % p == 0:
                g = Mat2(1, 0, x, 1)
                return g * GEN_S * g.inv()
    if legendre(-3, p) == 1:
        for z in range(1, p):
            if (z * z - z + 1) % p == 0:
                g = Mat2(1, 0, z, 1)
                return g * GEN_T * g.inv()
    return None


# Elements of the projective modular group in free product normal form:
# tuples over the tokens "s" (the involution) and "t", "T" (the order 3
# generator and its inverse), with adjacent tokens always from different
# factors.  This is the length function Nielsen reduction runs on.

_T_EXP = {"t": 1, "T": 2}
_T_TOK = {1: "t", 2: "T"}


def _syllable_mul(a, b):
    out = list(a)
    for tok in b:
        if not out:
            out.append(tok)
            continue
        last = out[-1]
        if last == "s" and tok == "s":
            out.pop()
        elif last != "s" and tok != "s":
            e = (_T_EXP[last] + _T_EXP[tok]) % 3
            out.pop()
            if e:
                out.append(_T_TOK[e])
        else:
            out.append(tok)
    return tuple(out)


def _syllable_inv(a):
    return tuple("s" if tok == "s" else _T_TOK[3 - _T_EXP[tok]]
                 for tok in reversed(a))


def _word_to_syllables(word):
    out = ()
    for g, sgn in word.letters:
        if g == _LETTER_S:
            out = _syllable_mul(out, ("s",))
        else:
            out = _syllable_mul(out, ("t",) if sgn == 1 else ("T",))
    return out


def _syllables_to_word(syl):
    letters = []
    for tok in syl:
        if tok == "s":
            letters.append((_LETTER_S, 1))
        elif tok == "t":
            letters.append((_LETTER_T, 1))
        else:
            letters.extend([(_LETTER_T, -1)])
    return Word(tuple(letters))


def _nielsen_reduce(elems):
    """Greedy length reduction of a generating set in syllable form.

    Applies Nielsen moves (replace a generator by its product with another
    generator or that generator's inverse, or by a conjugate) while any
    move shortens the set, dropping trivial elements and inverse
    duplicates.  Total syllable length strictly decreases, so this
    terminates.
    """
    elems = [e for e in elems if e]
    changed = True
    while changed:
        changed = False
        # dedupe up to inversion
        canon = {}
        for e in elems:
            key = min(e, _syllable_inv(e))
            if key not in canon:
                canon[key] = e
        elems = list(canon.values())
        for i in range(len(elems)):
            if changed:
                break
            a = elems[i]
            for j in range(len(elems)):
                if i == j:
                    continue
                b = elems[j]
                candidates = [
                    _syllable_mul(a, b),
                    _syllable_mul(a, _syllable_inv(b)),
                    _syllable_mul(b, a),
                    _syllable_mul(_syllable_inv(b), a),
                    _syllable_mul(_syllable_mul(b, a), _syllable_inv(b)),
                    _syllable_mul(_syllable_mul(_syllable_inv(b), a), b),
                ]
                best = min(candidates, key=len)
                if len(best) < len(a):
                    if best:
                        elems[i] = best
                    else:
                        elems.pop(i)
                    changed = True
                    break
    return elems


class FreeBasis:
    """A free basis of the projective c = 0 mod p subgroup."""

    __slots__ = ("p", "words", "matrices")

    def __init__(self, p, words, matrices):
        self.p = p
        self.words = list(words)
        self.matrices = list(matrices)
        for m in self.matrices:
            if m.c % p:
                raise ValueError("basis matrix outside the subgroup")

    @property
    def rank(self):
        return len(self.words)

    def to_payload(self):
        pres, _ = builtin("psl2")
        return {
            "prime": self.p,
            "words": [w.format(pres.generators) for w in self.words],
            "matrices": [list(m.entries()) for m in self.matrices],
        }


def schreier_free_basis(p):
    """Free basis of the projective c = 0 mod p subgroup, p = 11 mod 12.

    Schreier generators u(l, x) = w(l.x)^-1 l w(x) from the breadth-first
    transversal generate the subgroup; rewriting the two relators through
    the transversal gives exactly one relation per orbit of each generator
    on the points,

        u(S, S.x) u(S, x) = 1,    u(T, T.T.x) u(T, T.x) u(T, x) = 1,

    and those products literally cancel to the empty normal form.  Keeping
    one generator per involution orbit and two per order 3 orbit (dropping
    trivial ones) consumes every relation, so what remains is a free
    basis.  A final Nielsen pass shortens it; the size must land exactly
    on 1 + (p+1)/6, the rank forced by the Euler characteristic of a
    torsion-free index p+1 subgroup, and any mismatch is reported rather
    than papered over.
    """
    if not torsion_criterion(p):
        raise ValueError("subgroup has torsion for p = %d" % p)
    table = coset_table(p)

    def schreier(perm, letter):
        return [_word_to_syllables(table.transversal[perm[x]].inverse()
                                   * letter * table.transversal[x])
                for x in table.points]

    u_s = schreier(table.perm_s, Word(((_LETTER_S, 1),)))
    u_t = schreier(table.perm_t, Word(((_LETTER_T, 1),)))

    basis = []
    done = set()
    for x in table.points:
        if x in done:
            continue
        y = table.perm_s[x]
        if y == x:
            raise RuntimeError("involution fixes a point despite criterion")
        done.update((x, y))
        live = sorted((u for u in (u_s[x], u_s[y]) if u), key=len)
        if len(live) == 1:
            raise RuntimeError("involution orbit relation failed")
        if live:
            # mutual inverses; either one carries the orbit
            basis.append(live[0])
    done = set()
    for x in table.points:
        if x in done:
            continue
        y = table.perm_t[x]
        z = table.perm_t[y]
        if len({x, y, z}) != 3:
            raise RuntimeError("order 3 orbit degenerates despite criterion")
        done.update((x, y, z))
        live = sorted((u for u in (u_t[x], u_t[y], u_t[z]) if u), key=len)
        if len(live) == 3:
            # the longest is a product of the other two
            basis.extend(live[:2])
        elif len(live) == 2:
            # with one trivial the remaining pair are mutual inverses
            basis.append(live[0])
        elif len(live) == 1:
            raise RuntimeError("order 3 orbit relation failed")

    basis = _nielsen_reduce(basis)
    expected = 1 + (p + 1) // 6
    if len(basis) != expected:
        raise RuntimeError(
            "reduction finished with %d generators, free rank is %d"
            % (len(basis), expected))
    words = [_syllables_to_word(s) for s in basis]
    mats = [evaluate_word(w, (GEN_S, GEN_T)) for w in words]
    return FreeBasis(p, words, mats)


class Sl2Lift:
    """A free subgroup lifted into the integer matrix group.

    The lift keeps the basis words, read on the order 4 and order 6
    generators; its only overgroups are the direct product with the center
    and the full group, and both are attached for certificate building.
    """

    __slots__ = ("prime", "presentation", "assignment", "embedding",
                 "overgroups")

    def __init__(self, prime, presentation, assignment, embedding, overgroups):
        self.prime = prime
        self.presentation = presentation
        self.assignment = assignment
        self.embedding = embedding
        self.overgroups = overgroups

    @property
    def rank(self):
        return len(self.presentation.generators)


def lift_to_sl2(basis):
    """Lift a projective free basis to the determinant 1 matrix group.

    Words are reinterpreted on the order 4 generator s and order 6
    generator t; the lifted subgroup is free on the same basis because the
    projective quotient is injective on it.
    """
    from .cohomology import Overgroup

    k = basis.rank
    gens = tuple("x%d" % (i + 1) for i in range(k))
    sub_pres = Presentation("free-lift:%d" % basis.p, gens, ())
    sl2_pres, sl2_assign = builtin("sl2")
    lifted = [evaluate_word(w, sl2_assign.matrices) for w in basis.words]
    sub_assign = MatrixAssignment(lifted)
    embedding = Embedding(sl2_pres, list(basis.words))

    # direct product with the center: z commutes with everything, z^2 = 1
    keps_gens = gens + ("z",)
    z = len(gens)
    relators = [Word(((z, 1), (z, 1)))]
    for i in range(k):
        relators.append(Word(((z, 1), (i, 1), (z, -1), (i, -1))))
    keps = Presentation("K x <eps>", keps_gens, relators)
    keps_assign = MatrixAssignment(lifted + [GEN_EPS])
    keps_emb = Embedding(keps, [Word(((i, 1),)) for i in range(k)])

    overgroups = [
        Overgroup("K x <eps>", keps, keps_assign, keps_emb),
        Overgroup("sl2", sl2_pres, sl2_assign, embedding),
    ]
    return Sl2Lift(basis.p, sub_pres, sub_assign, embedding, overgroups)


def gamma1_free_reason(N):
    """A prime p = 11 mod 12 dividing N, if one exists.

    Such a divisor embeds Gamma_1(N) into the free projective subgroup for
    p, so the group itself is free.
    """
    d = 2
    n = N
    while d * d <= n:
        if n % d == 0:
            if d % 12 == 11 and torsion_criterion(d):
                return d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1 and n % 12 == 11 and torsion_criterion(n):
        return n
    return None


_SAMPLE_LETTERS = None


def _sample_letters():
    global _SAMPLE_LETTERS
    if _SAMPLE_LETTERS is None:
        s, t = GEN_S, GEN_T
        _SAMPLE_LETTERS = (s, s.inv(), t, t.inv())
    return _SAMPLE_LETTERS


def _sample_words(seed, count, max_length):
    # The sampling scheme is part of the certificate format: Mersenne
    # Twister seeded with `seed`, each word drawn as a length in
    # [1, max_length] followed by that many letters from (s, s^-1, t, t^-1).
    rng = random.Random(seed)
    letters = _sample_letters()
    for _ in range(count):
        length = rng.randint(1, max_length)
        g = Mat2.identity()
        for _ in range(length):
            g = g * letters[rng.randrange(4)]
        yield g


def membership_mismatches(N, seed=0, count=10000, max_length=20):
    """Count sampled words where bN integrality and membership disagree."""
    bad = 0
    for g in _sample_words(seed, count, max_length):
        _, integral = bN(g, N)
        if integral != gamma1_member(g, N):
            bad += 1
    return bad


def certify_membership_sample(N, seed=0, count=10000, max_length=20):
    """A re-runnable record that the cocycle characterization held.

    The certificate pins the sampling scheme; verification regenerates the
    same words and recounts.  This is evidence, not proof, but the full
    equivalence is a short determinant argument either way.
    """
    from .cohomology import CERTIFICATE_FORMAT, Certificate

    mismatches = membership_mismatches(N, seed, count, max_length)
    if mismatches:
        raise ValueError("characterization failed on %d words" % mismatches)
    payload = {
        "format": CERTIFICATE_FORMAT,
        "kind": "membership-sample",
        "modulus": N,
        "seed": seed,
        "count": count,
        "max_length": max_length,
        "mismatches": 0,
    }
    return Certificate(payload)


def verify_membership_sample_payload(payload, check):
    """Re-run a sampled membership certificate, reporting through check()."""
    try:
        N = int(payload["modulus"])
        seed = int(payload["seed"])
        count = int(payload["count"])
        max_length = int(payload["max_length"])
        claimed = int(payload["mismatches"])
    except (KeyError, TypeError, ValueError) as e:
        check("payload fields", False, actual=repr(e))
        return
    check("claimed mismatch count", claimed == 0, 0, claimed)
    recount = membership_mismatches(N, seed, count, max_length)
    check("recounted mismatches", recount == claimed, claimed, recount)
