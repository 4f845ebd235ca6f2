import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pivotal as pv
from helpers import AND2, PARITY3, XOR2, all_bool_tables, bool_table, from_fn


def test_cofactor_relation_examples():
    rel = pv.cofactor_relation(AND2)
    assert rel.pairs == frozenset({(0, 0), (1, 0)})
    const = pv.FunctionTable.constant(pv.BOOL, pv.BOOL, 2, 1)
    assert pv.cofactor_relation(const).pairs == frozenset({(1, 1)})
    ident = bool_table(1, 0b10)
    assert pv.cofactor_relation(ident).pairs == frozenset({(1, 0)})


def test_cofactor_relation_per_argument_union():
    rel = pv.cofactor_relation(PARITY3)
    assert rel.pairs == frozenset().union(*rel.per_argument)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.data())
def test_cofactor_relation_against_oracle(n, data):
    f = bool_table(n, data.draw(st.integers(0, (1 << (1 << n)) - 1)))
    want = set()
    per = [set() for _ in range(n)]
    for x in f.points():
        for k in range(1, n + 1):
            pair = (f.evaluate(pv.substitute(x, k, 1)), f.evaluate(pv.substitute(x, k, 0)))
            want.add(pair)
            per[k - 1].add(pair)
    rel = pv.cofactor_relation(f)
    assert rel.pairs == frozenset(want)
    assert rel.per_argument == tuple(frozenset(p) for p in per)


def test_check_decomposition_ite_everywhere():
    ite = pv.builtin_pivotal("ite")
    for n in (1, 2):
        for f in all_bool_tables(n):
            assert pv.check_decomposition(f, ite).ok
    assert pv.check_decomposition(PARITY3, ite).ok


def test_check_decomposition_parity_vs_median():
    med = pv.builtin_pivotal("median", sort=pv.BOOL)
    report = pv.check_decomposition(XOR2, med)
    assert not report.ok
    # oracle: scan points in index order, pivots innermost
    want = []
    for x in XOR2.points():
        for k in (1, 2):
            hi = XOR2.evaluate(pv.substitute(x, k, 1))
            lo = XOR2.evaluate(pv.substitute(x, k, 0))
            if sorted((x[k - 1], hi, lo))[1] != XOR2.evaluate(x):
                want.append((x, k))
    assert report.violations == tuple(want)
    assert report.violations[0] == ((0, 1), 1)


def test_check_decomposition_constant_rule():
    const = pv.FunctionTable.constant(pv.BOOL, pv.BOOL, 2, 1)
    assert pv.check_decomposition(const, pv.builtin_pivotal("ite")).ok


def test_check_decomposition_coverage_error():
    pi = pv.ExtensionalPivotal({(0, 0, 0): 0})
    with pytest.raises(pv.DomainCoverageError) as exc:
        pv.check_decomposition(AND2, pi)
    assert len(exc.value.triple) == 3


def test_synthesize_parity_matches_ite():
    res = pv.synthesize_pivotal(XOR2)
    assert res.pivotal is not None
    ite = pv.builtin_pivotal("ite")
    for (p, u, v) in res.pivotal.triples:
        assert res.pivotal.apply(p, u, v) == ite.apply(p, u, v)


def test_synthesize_all_boolean_small():
    for n in (1, 2):
        for f in all_bool_tables(n):
            res = pv.synthesize_pivotal(f)
            assert res.pivotal is not None
            assert pv.check_decomposition(f, res.pivotal).ok


def test_synthesize_unary_identity_on_chain():
    sort = pv.chain_sort(3)
    f = pv.FunctionTable(sort, sort, 1, sort.elements)
    res = pv.synthesize_pivotal(f)
    assert res.pivotal is not None
    h = Fraction(1, 2)
    assert res.pivotal.apply(h, Fraction(1), Fraction(0)) == h


def _chain3_conflict_table():
    sort = pv.chain_sort(3)
    # one lonely bump at (1/2, 1/2); both cofactor rows vanish around it
    values = (0, 0, 0, 0, 1, 0, 0, 0, 0)
    return pv.FunctionTable(sort, sort, 2, values)


def test_synthesize_conflict_witness():
    f = _chain3_conflict_table()
    res = pv.synthesize_pivotal(f)
    assert res.pivotal is None
    c = res.conflict
    h = Fraction(1, 2)
    # oracle-confirmed first collision in scan order: the triple is first
    # written by (0, 1/2) at pivot 2, then contradicted by (1/2, 1/2) at pivot 1
    assert (c.point_first, c.k_first) == ((Fraction(0), h), 2)
    assert (c.point_second, c.k_second) == ((h, h), 1)
    assert c.triple == (h, Fraction(0), Fraction(0))
    assert c.values == (Fraction(0), Fraction(1))


def test_componentwise_conflict_witness():
    f = _chain3_conflict_table()
    res = pv.synthesize_componentwise(f)
    assert res.pivotals is None and res.failed_k == 1
    h = Fraction(1, 2)
    assert res.conflict.point_first == (h, Fraction(0))
    assert res.conflict.point_second == (h, h)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.data())
def test_synthesis_soundness(n, data):
    f = bool_table(n, data.draw(st.integers(0, (1 << (1 << n)) - 1)))
    res = pv.synthesize_pivotal(f)
    assert res.pivotal is not None
    assert pv.check_decomposition(f, res.pivotal).ok
    for (u, v) in pv.cofactor_relation(f).pairs:
        assert res.pivotal.apply(1, u, v) == u
        assert res.pivotal.apply(0, u, v) == v


def test_synthesis_conflict_is_genuine_on_chain():
    random.seed(7)
    sort = pv.chain_sort(3)
    for _ in range(40):
        values = tuple(random.choice(sort.elements) for _ in range(9))
        f = pv.FunctionTable(sort, sort, 2, values)
        res = pv.synthesize_pivotal(f)
        if res.pivotal is not None:
            assert pv.check_decomposition(f, res.pivotal).ok
        else:
            c = res.conflict
            a, b = c.point_first, c.point_second
            pa = (a[c.k_first - 1],
                  f.evaluate(pv.substitute(a, c.k_first, sort.one)),
                  f.evaluate(pv.substitute(a, c.k_first, sort.zero)))
            pb = (b[c.k_second - 1],
                  f.evaluate(pv.substitute(b, c.k_second, sort.one)),
                  f.evaluate(pv.substitute(b, c.k_second, sort.zero)))
            assert pa == pb == c.triple
            assert f.evaluate(a) != f.evaluate(b)


def test_uniqueness_synthesized_equals_ite_on_domain():
    for n in (1, 2):
        for f in all_bool_tables(n):
            pi = pv.synthesize_pivotal(f).pivotal
            ite = pv.builtin_pivotal("ite")
            for (p, u, v) in pi.triples:
                assert pi.apply(p, u, v) == ite.apply(p, u, v)


def test_section_closure_small():
    med = pv.builtin_pivotal("median", sort=pv.BOOL)
    for f in all_bool_tables(2):
        whole = pv.check_decomposition(f, med).ok
        sections_ok = all(
            pv.check_decomposition(pv.section(f, S, a), med).ok
            for S in ((1,), (2,), (1, 2)) for a in f.points())
        unary_ok = all(
            pv.check_decomposition(pv.section(f, (k,), a), med).ok
            for k in (1, 2) for a in f.points())
        assert whole == sections_ok == unary_ok


def test_monotone_restrict_ite():
    prime = pv.monotone_restrict(pv.builtin_pivotal("ite"))
    for p, u, v in product((0, 1), repeat=3):
        want = (p & (u | v)) | ((1 - p) & (u & v))
        assert prime.apply(p, u, v) == want


def test_monotone_restrict_affine():
    prime = pv.monotone_restrict(pv.builtin_pivotal("mle-affine"))
    h = Fraction(1, 2)
    assert prime.apply(h, Fraction(1), Fraction(3)) == h * 3 + h * 1
    assert prime.apply(Fraction(1, 4), Fraction(0), Fraction(2)) == Fraction(1, 4) * 2


def test_monotone_restrict_fixed_on_equal_cofactors():
    prime = pv.monotone_restrict(pv.builtin_pivotal("mle-affine"))
    base = pv.builtin_pivotal("mle-affine")
    for p in (Fraction(0), Fraction(1, 3), Fraction(1)):
        for u in (Fraction(-2), Fraction(0), Fraction(5, 7)):
            assert prime.apply(p, u, u) == base.apply(p, u, u)


def test_monotone_restrict_rejects_unordered_lattice():
    lat = pv.validate_lattice(
        ("0", "a", "b", "1"),
        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    med = pv.builtin_pivotal("median", sort=lat.as_sort())
    with pytest.raises(pv.SortError):
        pv.monotone_restrict(med)


def test_builtin_boundary_laws():
    ite = pv.builtin_pivotal("ite")
    assert ite.apply(1, "u", "v") == "u" and ite.apply(0, "u", "v") == "v"
    aff = pv.builtin_pivotal("mle-affine")
    assert aff.apply(Fraction(1, 2), Fraction(3), Fraction(1)) == 2


def _min_tnorm_table(size):
    sort = pv.chain_sort(size)
    return pv.FunctionTable.from_function(sort, sort, 2, min)


def test_builtin_tnorm_min():
    pi = pv.builtin_pivotal("tnorm", table=_min_tnorm_table(3))
    h = Fraction(1, 2)
    for v in (Fraction(0), h, Fraction(1)):
        assert pi.apply(h, Fraction(1), v) == h


def test_tnorm_validation_witnesses():
    sort3 = pv.chain_sort(3)
    z, h, o = sort3.elements

    with pytest.raises(pv.PivotalFamilyError) as exc:
        pv.builtin_pivotal("tnorm", table=pv.FunctionTable.from_function(
            sort3, sort3, 2, lambda x: z))
    assert exc.value.axiom == "unit"

    asym = {(z, z): z, (z, h): h, (h, z): z, (h, h): h,
            (o, z): z, (o, h): h, (o, o): o, (z, o): z, (h, o): h}
    with pytest.raises(pv.PivotalFamilyError) as exc:
        pv.builtin_pivotal("tnorm", table=pv.FunctionTable.from_function(
            sort3, sort3, 2, lambda x: asym[x]))
    assert exc.value.axiom == "symmetry"

    bump = {(z, z): h, (z, h): z, (h, z): z, (h, h): z,
            (o, z): z, (o, h): h, (o, o): o, (z, o): z, (h, o): h}
    with pytest.raises(pv.PivotalFamilyError) as exc:
        pv.builtin_pivotal("tnorm", table=pv.FunctionTable.from_function(
            sort3, sort3, 2, lambda x: bump[x]))
    assert exc.value.axiom == "monotonicity"

    sort4 = pv.chain_sort(4)
    z4, a, b, o4 = sort4.elements
    vals = {(a, a): z4, (a, b): a, (b, a): a, (b, b): a}

    def nonassoc(x):
        if o4 in x:
            return min(x)
        if z4 in x:
            return z4
        return vals[x]

    with pytest.raises(pv.PivotalFamilyError) as exc:
        pv.builtin_pivotal("tnorm", table=pv.FunctionTable.from_function(
            sort4, sort4, 2, nonassoc))
    assert exc.value.axiom == "associativity"

    # drastic product: min when 1 is involved, else 0 -- a genuine t-norm
    drastic = pv.FunctionTable.from_function(
        sort3, sort3, 2, lambda x: min(x) if o in x else z)
    pi = pv.builtin_pivotal("tnorm", table=drastic)
    assert pv.check_decomposition(drastic, pi).ok


def _all_tnorms(size):
    sort = pv.chain_sort(size)
    elems = sort.elements
    top = elems[-1]
    cells = [(a, b) for i, a in enumerate(elems[1:-1], start=1)
             for b in elems[i:-1]]
    found = []
    for choice in product(*[range(len(elems)) for _ in cells]):
        vals = {}
        ok = True
        for (a, b), ci in zip(cells, choice):
            v = elems[ci]
            if v > min(a, b):
                ok = False
                break
            vals[(a, b)] = vals[(b, a)] = v
        if not ok:
            continue
        for x in elems:
            vals[(top, x)] = vals[(x, top)] = x
            vals[(elems[0], x)] = vals[(x, elems[0])] = elems[0]

        def T(x):
            return vals[x]

        table = pv.FunctionTable.from_function(sort, sort, 2, T)
        try:
            pv.builtin_pivotal("tnorm", table=table)
        except pv.PivotalFamilyError:
            continue
        found.append(table)
    return found


def test_every_tnorm_decomposes_through_its_own_family():
    counts = {}
    for size in (2, 3, 4, 5):
        tnorms = _all_tnorms(size)
        counts[size] = len(tnorms)
        for table in tnorms:
            pi = pv.builtin_pivotal("tnorm", table=table)
            assert pv.check_decomposition(table, pi).ok
    # frozen from the enumeration itself; the classical counts for small chains
    assert counts == {2: 1, 3: 2, 4: 6, 5: 22}


def test_qlp_family_range_validation():
    sort = pv.chain_sort(3)
    bad = pv.FunctionTable(sort, sort, 1, (Fraction(0), Fraction(1), Fraction(1, 2)))
    with pytest.raises(pv.PivotalFamilyError) as exc:
        pv.builtin_pivotal("qlp", phi=bad)
    assert exc.value.axiom == "range-condition"


def test_componentwise_follows_from_shared():
    for f in all_bool_tables(2):
        assert pv.synthesize_pivotal(f).pivotal is not None
        res = pv.synthesize_componentwise(f)
        assert res.pivotals is not None
        assert pv.check_componentwise(f, res.pivotals).ok


def test_componentwise_median_map_on_monotone_table():
    f = pv.FunctionTable(pv.BOOL, pv.RATIONAL, 2, (0, 1, 0, 0))  # (not x1) and x2
    ext = pv.synthesize_componentwise(f)
    assert ext.pivotals is not None
    med = pv.synthesize_componentwise(f, family="median-map")
    assert med.pivotals is not None
    assert med.phis == ("neg", "id")
    assert pv.check_componentwise(f, med.pivotals).ok


def test_componentwise_median_map_parity_fails():
    f = pv.FunctionTable(pv.BOOL, pv.RATIONAL, 2, (0, 1, 1, 0))
    assert pv.synthesize_componentwise(f).pivotals is not None  # extensional succeeds
    res = pv.synthesize_componentwise(f, family="median-map")
    assert res.pivotals is None and res.failed_k == 1


def test_componentwise_lovasz_grid_failure():
    form = pv.LovaszForm(3, (0, 0, 0, 1, 0, 0, 1, 0))  # min(x1,x2) + min(x2,x3)
    f = pv.lovasz_table(form, 4)
    res = pv.synthesize_componentwise(f)
    assert res.pivotals is None and res.failed_k == 2
    # oracle: first conflicting pair in index-order scan
    seen = {}
    want = None
    for x in f.points():
        key = (x[1],
               f.evaluate(pv.substitute(x, 2, Fraction(1))),
               f.evaluate(pv.substitute(x, 2, Fraction(0))))
        if key in seen and f.evaluate(seen[key]) != f.evaluate(x):
            want = (seen[key], x)
            break
        seen.setdefault(key, x)
    assert (res.conflict.point_first, res.conflict.point_second) == want
    assert want[0] == (Fraction(0), Fraction(1, 4), Fraction(1, 2))
    assert want[1] == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4))
    # the classical illustration is a genuine (non-first) conflict too
    a = (Fraction(1, 2),) * 3
    b = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    for k, pt in ((2, a), (2, b)):
        assert f.evaluate(pv.substitute(pt, k, Fraction(1))) == 1
        assert f.evaluate(pv.substitute(pt, k, Fraction(0))) == 0
    assert f.evaluate(a) == 1 and f.evaluate(b) == Fraction(3, 4)


def _transport(pi, phi_inv, psi):
    mapping = {}
    for (p, u, v), w in pi.mapping.items():
        mapping[(phi_inv[p], psi[u], psi[v])] = psi[w]
    return pv.ExtensionalPivotal(mapping)


def test_transport_law_on_four_chain():
    # middle-swapping bijection on the domain, random bijections on values
    random.seed(11)
    sort = pv.chain_sort(4)
    z, a, b, o = sort.elements
    phi = {z: z, a: b, b: a, o: o}
    phi_inv = phi  # an involution
    tables = []
    tables.append(pv.FunctionTable.from_function(sort, sort, 2, min))
    tables.append(pv.FunctionTable.from_function(sort, sort, 2, max))
    tables.append(pv.FunctionTable.from_function(sort, sort, 2, lambda x: x[0]))
    tables.append(pv.FunctionTable.constant(sort, sort, 2, a))
    for _ in range(16):
        tables.append(pv.FunctionTable(
            sort, sort, 2, tuple(random.choice(sort.elements) for _ in range(16))))
    both = {"decomposable": 0, "not": 0}
    for f in tables:
        perm = list(sort.elements)
        random.shuffle(perm)
        psi = dict(zip(sort.elements, perm))
        fprime = pv.FunctionTable.from_function(
            sort, sort, 2, lambda x: psi[f.evaluate((phi[x[0]], phi[x[1]]))])
        res = pv.synthesize_pivotal(f)
        res_prime = pv.synthesize_pivotal(fprime)
        assert (res.pivotal is None) == (res_prime.pivotal is None)
        if res.pivotal is not None:
            both["decomposable"] += 1
            transported = _transport(res.pivotal, phi_inv, psi)
            assert pv.check_decomposition(fprime, transported).ok
        else:
            both["not"] += 1
    assert both["decomposable"] >= 4 and both["not"] >= 4
