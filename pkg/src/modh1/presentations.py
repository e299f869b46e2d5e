"""Finitely presented groups, matrix assignments, and cocycle machinery.

Words are stored fully expanded as tuples of (generator index, sign) letters;
parsing accepts exponent shorthand like "s^-2" but expands it immediately.
A 1-cocycle for a representation rho is determined by its values on the
generators, and extends to arbitrary words by the transport rule

    b(x_1 ... x_m) = sum_j rho(x_1 ... x_{j-1}) b(x_j),
    b(g^-1) = -rho(g)^-1 b(g).

Applying the transport rule to each relator gives a linear condition on the
generator values; stacking those conditions yields the relator condition
matrix, whose integer kernel is exactly the cocycle lattice Z^1.
"""

from __future__ import annotations

from .linalg import IntMatrix, hstack, invert_unimodular, vstack
from .polyrep import GEN_S, GEN_T, GEN_W, Mat2, rho_matrix


class Word:
    """A word in the generators of a presentation, fully expanded."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        letters = tuple((int(g), int(s)) for g, s in letters)
        for _, s in letters:
            if s not in (1, -1):
                raise ValueError("letter signs must be +-1")
        self.letters = letters

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def single(cls, gen, sign=1):
        return cls(((gen, sign),))

    @classmethod
    def parse(cls, text, generators):
        """Parse a whitespace separated word like 's t^-1 s' or 'S^2 T'."""
        index = {name: i for i, name in enumerate(generators)}
        letters = []
        for token in text.split():
            if "^" in token:
                name, _, exp = token.partition("^")
                power = int(exp)
            else:
                name, power = token, 1
            if name not in index:
                raise ValueError("unknown generator %r" % name)
            g = index[name]
            sign = 1 if power > 0 else -1
            letters.extend((g, sign) for _ in range(abs(power)))
        return cls(letters)

    def format(self, generators):
        if not self.letters:
            return "1"
        return " ".join(generators[g] if s == 1 else generators[g] + "^-1"
                        for g, s in self.letters)

    def inverse(self):
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "Word(%r)" % (self.letters,)


class Presentation:
    """Generator names plus relator words."""

    __slots__ = ("name", "generators", "relators")

    def __init__(self, name, generators, relators):
        self.name = name
        self.generators = tuple(generators)
        self.relators = tuple(relators)

    def parse_word(self, text):
        return Word.parse(text, self.generators)

    def __repr__(self):
        return "Presentation(%r, %d generators, %d relators)" % (
            self.name, len(self.generators), len(self.relators))


class MatrixAssignment:
    """Concrete 2x2 matrices for the generators of a presentation.

    With projective=True relators only need to evaluate to +-identity,
    which is how the PSL and PGL presentations are realized by integer
    matrices.
    """

    __slots__ = ("matrices", "projective")

    def __init__(self, matrices, projective=False):
        self.matrices = tuple(matrices)
        self.projective = bool(projective)

    def check(self, presentation):
        eye = Mat2.identity()
        for rel in presentation.relators:
            m = evaluate_word(rel, self.matrices)
            ok = m.proj_eq(eye) if self.projective else m == eye
            if not ok:
                raise ValueError("relator %s does not evaluate to the identity"
                                 % rel.format(presentation.generators))

    def rep(self, n):
        """Degree-n representation matrices for the generators."""
        return [rho_matrix(m, n) for m in self.matrices]


class Embedding:
    """A subgroup generator list, as words in an ambient presentation."""

    __slots__ = ("ambient", "words")

    def __init__(self, ambient, words):
        self.ambient = ambient
        self.words = tuple(words)


def evaluate_word(word, matrices):
    """Evaluate a word in a list of Mat2 values."""
    out = Mat2.identity()
    for g, s in word.letters:
        out = out * (matrices[g] if s == 1 else matrices[g].inv())
    return out


def _sanov_generators(k):
    # Conjugates A^i B A^-i of B = (1 0; 2 1) by A = (1 2; 0 1) generate a
    # free group of rank k (ping-pong inside the rank 2 Sanov group).
    A = Mat2(1, 2, 0, 1)
    B = Mat2(1, 0, 2, 1)
    out = []
    left = Mat2.identity()
    for _ in range(k):
        out.append(left * B * left.inv())
        left = left * A
    return out


def builtin(name):
    """A named presentation with its standard matrix assignment.

    Known names: psl2, sl2, pgl2, gl2, and free:k for k >= 1.  The first
    four are the amalgam presentations of the (projective) modular and
    extended modular groups on the standard order 4, order 6 and swap
    generators.
    """
    key = name.strip().lower()
    if key == "psl2":
        p = Presentation("psl2", ("S", "T"), ())
        rel = (p.parse_word("S S"), p.parse_word("T T T"))
        p = Presentation("psl2", ("S", "T"), rel)
        return p, MatrixAssignment((GEN_S, GEN_T), projective=True)
    if key == "sl2":
        p = Presentation("sl2", ("s", "t"), ())
        rel = (p.parse_word("s s s s"), p.parse_word("s s t^-3"))
        p = Presentation("sl2", ("s", "t"), rel)
        return p, MatrixAssignment((GEN_S, GEN_T))
    if key == "pgl2":
        p = Presentation("pgl2", ("S", "T", "W"), ())
        rel = (p.parse_word("S S"), p.parse_word("T T T"), p.parse_word("W W"),
               p.parse_word("S W S W"), p.parse_word("T W T W"))
        p = Presentation("pgl2", ("S", "T", "W"), rel)
        return p, MatrixAssignment((GEN_S, GEN_T, GEN_W), projective=True)
    if key == "gl2":
        p = Presentation("gl2", ("s", "t", "w"), ())
        rel = (p.parse_word("s s s s"), p.parse_word("s s t^-3"),
               p.parse_word("w w"), p.parse_word("w s w s"),
               p.parse_word("w t w t"))
        p = Presentation("gl2", ("s", "t", "w"), rel)
        return p, MatrixAssignment((GEN_S, GEN_T, GEN_W))
    if key.startswith("free:"):
        k = int(key.split(":", 1)[1])
        if k < 1:
            raise ValueError("free rank must be at least 1")
        gens = tuple("g%d" % (i + 1) for i in range(k))
        p = Presentation(key, gens, ())
        return p, MatrixAssignment(_sanov_generators(k))
    raise ValueError("unknown group %r" % name)


def rep_inverses(rep):
    return [invert_unimodular(m) for m in rep]


def cocycle_transport(word, rep, values, rep_inv=None):
    """Value of the cocycle with the given generator values on a word."""
    if rep_inv is None:
        rep_inv = rep_inverses(rep)
    d = rep[0].rows
    total = [0] * d
    acc = IntMatrix.identity(d)
    for g, s in word.letters:
        if s == 1:
            v = values[g]
            step = rep[g]
        else:
            step = rep_inv[g]
            v = [-x for x in step.mulvec(values[g])]
        for i, x in enumerate(acc.mulvec(v)):
            total[i] += x
        acc = acc * step
    return total


def relator_condition_matrix(presentation, rep):
    """The linear conditions a cocycle's generator values must satisfy.

    Block column g of relator row r is the coefficient of b(g) in the
    transported value b(r); the stacked matrix has shape
    (#relators * d) x (#generators * d) and its integer kernel is Z^1.

    Raises ValueError when the representation does not kill some relator,
    e.g. for an odd degree action through a projective presentation.
    """
    k = len(presentation.generators)
    d = rep[0].rows
    rep_inv = rep_inverses(rep)
    eye = IntMatrix.identity(d)
    rows = []
    for rel in presentation.relators:
        blocks = [IntMatrix.zeros(d, d) for _ in range(k)]
        acc = eye
        for g, s in rel.letters:
            if s == 1:
                blocks[g] = blocks[g] + acc
                acc = acc * rep[g]
            else:
                step = rep_inv[g]
                blocks[g] = blocks[g] - acc * step
                acc = acc * step
        if acc != eye:
            raise ValueError(
                "representation does not satisfy relator %s"
                % rel.format(presentation.generators))
        rows.append(hstack(blocks))
    if not rows:
        return IntMatrix([], cols=k * d)
    return vstack(rows)
