"""
Commutative polynomials over Q, Buchberger's algorithm and toric ideals.

Monomials are exponent vectors (tuples of nonnegative integers). A TermOrder turns an exponent vector
into a sort key, larger key meaning larger monomial, so every order is a plain ``max``/``sorted``.
"""
from dataclasses import dataclass
import logging

from ahg_hgm import settings
from ahg_hgm.exact import format_rational, parse_rational, to_rational
from ahg_hgm.fibers import first_solution

logger = logging.getLogger(__name__)


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a, b):
    """Returns a / b, or None when b does not divide a."""
    quotient = tuple(x - y for x, y in zip(a, b))
    return None if any(q < 0 for q in quotient) else quotient


def divides(b, a):
    return all(y <= x for x, y in zip(a, b))


def unit_vector(i, n, power=1):
    return tuple(power if j == i else 0 for j in range(n))


@dataclass(frozen=True)
class TermOrder:
    """
    A monomial order on ``nvars`` variables.

    Attributes:
        kind (str): lex, grevlex or block.
        nvars (int): Number of variables.
        priority (tuple): Variable indices from most to least significant.
        block (int): For block orders, how many leading variables of ``priority`` form the
            elimination block; each block is compared by grevlex.
    """
    kind: str
    nvars: int
    priority: tuple = None
    block: int = 0

    def __post_init__(self):
        if self.kind not in ('lex', 'grevlex', 'block'):
            raise ValueError(f'unknown term order {self.kind!r}')
        if self.priority is None:
            object.__setattr__(self, 'priority', tuple(range(self.nvars)))
        if sorted(self.priority) != list(range(self.nvars)):
            raise ValueError('variable priority must be a permutation')

    @classmethod
    def lex(cls, nvars):
        return cls('lex', nvars)

    @classmethod
    def grevlex(cls, nvars):
        return cls('grevlex', nvars)

    @classmethod
    def elimination(cls, nvars, block):
        return cls('block', nvars, block=block)

    @classmethod
    def from_name(cls, name, nvars):
        if name not in ('lex', 'grevlex'):
            raise ValueError(f'unknown term order {name!r}, expected lex or grevlex')
        return cls(name, nvars)

    def key(self, e):
        p = self.priority
        if self.kind == 'lex':
            return tuple(e[i] for i in p)
        if self.kind == 'grevlex':
            return _grevlex_key(e, p)
        return _grevlex_key(e, p[:self.block]), _grevlex_key(e, p[self.block:])

    def __str__(self):
        return self.kind if self.kind != 'block' else f'block({self.block})'


def _grevlex_key(e, variables):
    return sum(e[i] for i in variables), tuple(-e[i] for i in reversed(variables))


class Poly:
    """
    A polynomial over Q as a map from exponent vectors to nonzero Fractions.
    """
    __slots__ = ('nvars', 'terms')

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f'exponent {e} does not have {nvars} entries')
            c = to_rational(c)
            if c:
                self.terms[e] = self.terms.get(e, 0) + c
                if not self.terms[e]:
                    del self.terms[e]

    @classmethod
    def monomial(cls, e, c=1):
        return cls(len(e), {tuple(e): c})

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def copy(self):
        p = Poly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def _combine(self, other, sign):
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.nvars)
        result = self.copy()
        for e, c in other.terms.items():
            value = result.terms.get(e, 0) + sign * c
            if value:
                result.terms[e] = value
            else:
                result.terms.pop(e, None)
        return result

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = Poly(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __mul__(self, other):
        if not isinstance(other, Poly):
            factor = to_rational(other)
            p = Poly(self.nvars)
            if factor:
                p.terms = {e: c * factor for e, c in self.terms.items()}
            return p
        result = Poly(self.nvars)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                value = result.terms.get(e, 0) + c1 * c2
                if value:
                    result.terms[e] = value
                else:
                    result.terms.pop(e, None)
        return result

    __rmul__ = __mul__

    def mul_term(self, e, c=1):
        p = Poly(self.nvars)
        p.terms = {monomial_mul(m, e): v * c for m, v in self.terms.items()}
        return p

    def leading_monomial(self, order):
        return max(self.terms, key=order.key)

    def leading_term(self, order):
        e = self.leading_monomial(order)
        return e, self.terms[e]

    def monic(self, order):
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self * (1 / c) if c != 1 else self

    def sorted_terms(self, order):
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_binomial(self):
        return len(self.terms) == 2 and sorted(self.terms.values()) == [-1, 1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def to_string(self, order=None, names='d'):
        """
        Human-readable form, terms in descending order, e.g. "d2*d3 - d1*d4".

        Args:
            order (TermOrder): Order of the printed terms, grevlex by default.
            names (str): Variable prefix, "d" for the derivations or "x".
        """
        if not self.terms:
            return '0'
        order = order or TermOrder.grevlex(self.nvars)
        parts = []
        for e, c in self.sorted_terms(order):
            factors = []
            for i, power in enumerate(e):
                if power == 1:
                    factors.append(f'{names}{i + 1}')
                elif power > 1:
                    factors.append(f'{names}{i + 1}^{power}')
            monomial = '*'.join(factors)
            magnitude = abs(c)
            if not monomial:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f'{format_rational(magnitude)}*{monomial}'
            if not parts:
                parts.append(body if c > 0 else f'-{body}')
            else:
                parts.append(f'{"+" if c > 0 else "-"} {body}')
        return ' '.join(parts)

    def __repr__(self):
        return f'Poly({self.to_string()})'

    def to_json(self, order=None):
        order = order or TermOrder.grevlex(self.nvars)
        return {'terms': [{'e': list(e), 'c': format_rational(c)} for e, c in self.sorted_terms(order)]}

    @classmethod
    def from_json(cls, data, nvars=None):
        terms = data['terms']
        if nvars is None:
            if not terms:
                raise ValueError('the number of variables of an empty polynomial must be given')
            nvars = len(terms[0]['e'])
        return cls(nvars, {tuple(t['e']): parse_rational(t['c']) for t in terms})


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic generators sorted by descending leading monomial."""
    generators: tuple
    order: TermOrder

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_standard(self, e):
        """True when no leading monomial divides the monomial e."""
        return not any(divides(lm, e) for lm in self.leading_monomials())

    def to_strings(self, names='d'):
        return [g.to_string(self.order, names) for g in self.generators]

    def to_json(self):
        return {'order': str(self.order), 'generators': [g.to_json(self.order) for g in self.generators]}


def spoly(f, g, order, lmf=None, lmg=None):
    """Return the s-polynomial of monic polynomials f and g."""
    lmf = f.leading_monomial(order) if lmf is None else lmf
    lmg = g.leading_monomial(order) if lmg is None else lmg
    lcm = monomial_lcm(lmf, lmg)
    return f.mul_term(monomial_div(lcm, lmf)) - g.mul_term(monomial_div(lcm, lmg))


def normal_form(p, G, order=None):
    """
    Full multivariate division remainder of p by the polynomials G.

    Args:
        p (Poly): The dividend.
        G (GroebnerBasis | list): Divisors; a list needs an explicit order.
        order (TermOrder): Defaults to the basis order.

    Returns:
        Poly: A remainder with no term divisible by a leading monomial of G.
    """
    if isinstance(G, GroebnerBasis):
        order = order or G.order
        G = G.generators
    reducers = []
    for g in G:
        if g:
            lm, lc = g.leading_term(order)
            reducers.append((lm, lc, g))
    work = dict(p.terms)
    remainder = Poly(p.nvars)
    while work:
        e = max(work, key=order.key)
        c = work.pop(e)
        for lm, lc, g in reducers:
            shift = monomial_div(e, lm)
            if shift is None:
                continue
            factor = c / lc
            for ge, gc in g.terms.items():
                if ge == lm:
                    continue
                target = monomial_mul(ge, shift)
                value = work.get(target, 0) - factor * gc
                if value:
                    work[target] = value
                else:
                    work.pop(target, None)
            break
        else:
            remainder.terms[e] = c
    return remainder


def monomial_normal_form(e, G):
    """
    Normal form of the monomial x^e by a binomial basis, which is again a monomial.

    Returns:
        tuple: The exponent of the normal form.
    """
    reduced = normal_form(Poly.monomial(e), G)
    if len(reduced.terms) != 1:
        raise ValueError(f'the basis does not reduce monomials to monomials: {reduced.to_string()}')
    (exponent, c), = reduced.terms.items()
    if c != 1:
        raise ValueError(f'the basis does not reduce monomials to monomials: {reduced.to_string()}')
    return exponent


def select(G, P, order):
    """Select the pair with the smallest lcm of leading monomials (normal strategy)."""
    def strategy_key(p):
        lcm = monomial_lcm(G[p[0]][0], G[p[1]][0])
        return sum(lcm), order.key(lcm), p
    return min(P, key=strategy_key)


def update(G, P, f, lmf):
    """Return the pair set after f is added to the basis G (Gebauer-Moeller criteria)."""
    lmG = [lm for lm, _ in G]
    lcm = monomial_lcm
    mul = monomial_mul
    P = {p for p in P if (not divides(lmf, lcm(lmG[p[0]], lmG[p[1]])) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))}
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized_lcms = []
    for L in sorted(lcm_dict, key=lambda m: (sum(m), m)):
        if all(not divides(L_, L) for L_ in minimalized_lcms):
            minimalized_lcms.append(L)
    new_pairs = set()
    for L in minimalized_lcms:
        # coprime leading monomials: the pair reduces to zero
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [(lmf, f)], P | new_pairs


def minimalize(G, order):
    """Return a minimal Groebner basis from arbitrary Groebner basis G."""
    Gmin = []
    for f in sorted(G, key=lambda h: order.key(h.leading_monomial(order))):
        lm = f.leading_monomial(order)
        if all(not divides(g.leading_monomial(order), lm) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G, order):
    """Return the reduced Groebner basis from a minimal Groebner basis G."""
    Gred = []
    for i in range(len(G)):
        g = normal_form(G[i], G[:i] + G[i + 1:], order)
        Gred.append(g.monic(order))
    return Gred


def buchberger(gens, order):
    """
    Computes the reduced Groebner basis of the ideal generated by ``gens``.

    Args:
        gens (list): Polynomials in ``order.nvars`` variables.
        order (TermOrder): The monomial order.

    Returns:
        GroebnerBasis: Monic generators sorted by descending leading monomial.
    """
    G = []
    P = set()
    for f in gens:
        f = f.monic(order)
        if f:
            G, P = update(G, P, f, f.leading_monomial(order))

    reductions = 0
    while P:
        i, j = select(G, P, order)
        P.remove((i, j))
        s = spoly(G[i][1], G[j][1], order, lmf=G[i][0], lmg=G[j][0])
        r = normal_form(s, [g for _, g in G], order)
        reductions += 1
        if r:
            r = r.monic(order)
            G, P = update(G, P, r, r.leading_monomial(order))

    basis = interreduce(minimalize([g for _, g in G], order), order)
    basis.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    logger.debug(f'Buchberger in {order.nvars} variables ({order}): {reductions} pairs reduced, {len(basis)} generators')
    return GroebnerBasis(tuple(basis), order)


def toric_gb(A, order=None):
    """
    Computes the reduced Groebner basis of the toric ideal I_A in the variables d1..dn.

    Auxiliary variables t1..td are eliminated with a block order from the generators
    d_j t^(a_j^-) - t^(a_j^+); when A has negative entries one more variable y with
    y*t1*...*td - 1 makes the t invertible. The t-free part is converted to ``order`` by
    running Buchberger again.

    Args:
        A (ConfigMatrix): The configuration, negative entries allowed.
        order (TermOrder | str): Target order on the n derivations, grevlex by default.

    Returns:
        GroebnerBasis: Binomials d^u - d^v with Au = Av.
    """
    d, n = A.d, A.n
    if order is None or isinstance(order, str):
        order = TermOrder.from_name(order or settings.DEFAULT_ORDER, n)
    laurent = not A.is_nonnegative()
    aux = d + (1 if laurent else 0)
    nvars = aux + n

    gens = []
    for j in range(n):
        column = A.column(j)
        positive = [max(a, 0) for a in column] + [0] * (aux - d)
        negative = [max(-a, 0) for a in column] + [0] * (aux - d)
        lhs = tuple(negative) + unit_vector(j, n)
        rhs = tuple(positive) + (0,) * n
        gens.append(Poly(nvars, {lhs: 1, rhs: -1}))
    if laurent:
        gens.append(Poly(nvars, {(1,) * aux + (0,) * n: 1, (0,) * nvars: -1}))

    eliminated = buchberger(gens, TermOrder.elimination(nvars, aux))
    kept = []
    for g in eliminated:
        if all(not any(e[:aux]) for e in g.terms):
            kept.append(Poly(n, {e[aux:]: c for e, c in g.terms.items()}))

    basis = buchberger(kept, order) if kept else GroebnerBasis((), order)
    logger.info(f'Toric Groebner basis of a {d}x{n} matrix ({order}): {len(basis)} generators')
    return basis


def semigroup_member(A, beta, G=None):
    """
    Writes beta as A u with u in N_0^n, u chosen as the standard monomial of its fiber.

    Args:
        A (ConfigMatrix): The configuration.
        beta (tuple): Integer vector of length d.
        G (GroebnerBasis): Toric basis used to normalize u, computed when omitted.

    Returns:
        tuple | None: The exponent u, or None when beta is not in N_0 A.
    """
    u = first_solution(A, beta)
    if u is None:
        return None
    G = toric_gb(A) if G is None else G
    return monomial_normal_form(u, G)
