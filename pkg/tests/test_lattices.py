from fractions import Fraction
from itertools import permutations, product

import pytest

import pivotal as pv


def three_chain():
    return pv.chain_lattice(("o", "m", "i"))


def diamond():
    # the four-element Boolean lattice {0, a, b, 1}; distributive
    return pv.validate_lattice(
        ("0", "a", "b", "1"),
        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        bottom="0", top="1")


def test_validate_chains():
    two = pv.chain_lattice(("0", "1"))
    assert two.bottom == "0" and two.top == "1"
    lat = three_chain()
    assert lat.leq_q("o", "i") and not lat.leq_q("i", "m")
    assert lat.meet("m", "i") == "m" and lat.join("o", "m") == "m"


def test_validate_rejects_m3():
    with pytest.raises(pv.LatticeError) as exc:
        pv.validate_lattice(
            ("0", "a", "b", "c", "1"),
            [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
    assert exc.value.axiom == "non-distributive"
    assert len(exc.value.witness) == 3


def test_validate_rejects_pentagon():
    with pytest.raises(pv.LatticeError) as exc:
        pv.validate_lattice(
            ("0", "a", "b", "c", "1"),
            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    assert exc.value.axiom == "non-distributive"


def test_validate_rejects_cycle():
    with pytest.raises(pv.LatticeError) as exc:
        pv.validate_lattice(("a", "b", "c"), [("a", "b"), ("b", "a"), ("a", "c"), ("b", "c")])
    assert exc.value.axiom == "not-a-poset"


def test_validate_rejects_missing_bounds():
    # two incomparable points: no meet, no join
    with pytest.raises(pv.LatticeError) as exc:
        pv.validate_lattice(("a", "b"), [])
    assert exc.value.axiom in ("missing-meet", "missing-join")


def test_validate_rejects_wrong_declared_bounds():
    with pytest.raises(pv.LatticeError) as exc:
        pv.validate_lattice(("0", "1"), [("0", "1")], bottom="1", top="0")
    assert exc.value.axiom == "unbounded"


def test_validate_size_cap():
    names = tuple(f"e{i}" for i in range(17))
    pairs = [(names[i], names[i + 1]) for i in range(16)]
    with pytest.raises(pv.LatticeError):
        pv.validate_lattice(names, pairs)


def test_median_examples():
    lat = three_chain()
    assert pv.median(lat, "m", "i", "o") == "m"
    two = pv.chain_lattice(("0", "1"))
    for u in ("0", "1"):
        for v in ("0", "1"):
            assert pv.median(two, "1", u, v) == two.join(u, v)
            assert pv.median(two, "0", u, v) == two.meet(u, v)
    assert pv.median(lat, "m", "m", "o") == "m"  # majority


def test_median_foreign_element():
    with pytest.raises(pv.SortError):
        pv.median(three_chain(), "m", "i", "zz")


def test_median_properties_exhaustive():
    for lat in (pv.chain_lattice(("0", "1")), three_chain(), diamond()):
        for p, u, v in product(lat.elements, repeat=3):
            base = lat.med(p, u, v)
            for q, w, z in permutations((p, u, v)):
                assert lat.med(q, w, z) == base
            assert lat.med(lat.bottom, u, v) == lat.meet(u, v)
            assert lat.med(lat.top, u, v) == lat.join(u, v)


def test_lattice_polynomial_requires_monotone_coefficients():
    lat = three_chain()
    with pytest.raises(pv.LatticeError):
        pv.LatticePolynomial(lat, 1, ("i", "o"))
    p = pv.LatticePolynomial(lat, 1, ("o", "m"))
    assert p.coefficients == ("o", "m")


def test_lp_evaluate_examples():
    lat = three_chain()
    conj = pv.LatticePolynomial(lat, 2, ("o", "o", "o", "i"))
    assert pv.lp_evaluate(conj, ("i", "i")) == "i"
    assert pv.lp_evaluate(conj, ("m", "i")) == "m"
    const = pv.LatticePolynomial(lat, 2, ("m",) * 4)
    for x in product(lat.elements, repeat=2):
        assert pv.lp_evaluate(const, x) == "m"


def test_lp_evaluate_at_characteristic_vectors_is_subset_join():
    lat = diamond()
    p = pv.LatticePolynomial(lat, 2, ("0", "a", "b", "1"))
    for s in range(4):
        point = tuple(
            lat.top if s & (1 << (2 - i)) else lat.bottom for i in (1, 2))
        want = lat.bottom
        for t in range(4):
            if t & s == t:
                want = lat.join(want, p.coefficients[t])
        assert pv.lp_evaluate(p, point) == want


def test_is_lattice_polynomial_meet():
    lat = three_chain()
    sort = lat.as_sort()
    meet = pv.FunctionTable.from_function(sort, sort, 2, lambda x: lat.meet(*x))
    p = pv.is_lattice_polynomial(meet)
    assert p is not None
    assert p.coefficients == ("o", "o", "o", "i")


def test_is_lattice_polynomial_rejects_antitone_map():
    lat = three_chain()
    sort = lat.as_sort()
    flip = pv.FunctionTable(sort, sort, 1, ("i", "m", "o"))
    assert pv.is_lattice_polynomial(flip) is None
    # the median identity already fails at the bottom point
    assert lat.med("o", flip.evaluate(("i",)), flip.evaluate(("o",))) != flip.evaluate(("o",))


def test_is_lattice_polynomial_constant():
    lat = three_chain()
    sort = lat.as_sort()
    const = pv.FunctionTable.constant(sort, sort, 2, "m")
    p = pv.is_lattice_polynomial(const)
    assert p is not None and p.coefficients[0] == "m"
    assert pv.lp_table(p).values == const.values


def test_lp_round_trip_exhaustive_small():
    # every order-preserving coefficient map reproduces itself through its table
    for lat in (pv.chain_lattice(("0", "1")), diamond()):
        n = 2 if len(lat.elements) == 2 else 1
        count = 0
        for coeffs in product(lat.elements, repeat=1 << n):
            try:
                p = pv.LatticePolynomial(lat, n, coeffs)
            except pv.LatticeError:
                continue
            count += 1
            table = pv.lp_table(p)
            q = pv.is_lattice_polynomial(table)
            assert q is not None
            assert q.coefficients == p.coefficients
            assert pv.lp_table(q).values == table.values
        assert count > 2


def test_median_identity_holds_for_every_polynomial_table():
    lat = three_chain()
    for coeffs in product(lat.elements, repeat=2):
        try:
            p = pv.LatticePolynomial(lat, 1, coeffs)
        except pv.LatticeError:
            continue
        f = pv.lp_table(p)
        for x in f.points():
            fx = f.evaluate(x)
            hi = f.evaluate((lat.top,))
            lo = f.evaluate((lat.bottom,))
            assert lat.med(x[0], hi, lo) == fx


def test_is_sugeno():
    lat = three_chain()
    conj = pv.LatticePolynomial(lat, 2, ("o", "o", "o", "i"))
    assert pv.is_sugeno(conj)
    capped = pv.LatticePolynomial(lat, 1, ("o", "m"))  # x meet m
    assert not pv.is_sugeno(capped)
    for c in lat.elements:
        const = pv.LatticePolynomial(lat, 1, (c, c))
        assert not pv.is_sugeno(const)


def test_qlp_check_identity_maps():
    conj = pv.parse_expression("x1 & x2", pv.BOOL)
    ident = pv.FunctionTable(pv.BOOL, pv.BOOL, 1, (0, 1))
    report = pv.qlp_check(conj, (ident, ident))
    assert report.ok and not report.violations


def test_qlp_check_mixed_orientation():
    f = pv.parse_expression("!x1 & x2", pv.BOOL)
    ident = pv.FunctionTable(pv.BOOL, pv.BOOL, 1, (0, 1))
    neg = pv.FunctionTable(pv.BOOL, pv.BOOL, 1, (1, 0))
    assert pv.qlp_check(f, (neg, ident)).ok
    assert not pv.qlp_check(f, (ident, ident)).ok


def test_qlp_check_parity_fails_all_orientations():
    f = pv.parse_expression("x1 ^ x2", pv.BOOL)
    ident = pv.FunctionTable(pv.BOOL, pv.BOOL, 1, (0, 1))
    neg = pv.FunctionTable(pv.BOOL, pv.BOOL, 1, (1, 0))
    for phi1 in (ident, neg):
        for phi2 in (ident, neg):
            report = pv.qlp_check(f, (phi1, phi2))
            assert not report.ok and report.violations


def test_qlp_diagonal_mode():
    lat = three_chain()
    sort = lat.as_sort()
    meet = pv.FunctionTable.from_function(sort, sort, 2, lambda x: lat.meet(*x))
    report = pv.qlp_check(meet)
    assert report.ok
    assert report.phis[0].values == ("o", "m", "i")


def test_qlp_range_condition_violation():
    lat = three_chain()
    sort = lat.as_sort()
    meet = pv.FunctionTable.from_function(sort, sort, 2, lambda x: lat.meet(*x))
    bad_phi = pv.FunctionTable(sort, sort, 1, ("o", "i", "m"))  # med(i, m, o) = m != i
    with pytest.raises(pv.RangeConditionError) as exc:
        pv.qlp_check(meet, (bad_phi, bad_phi))
    assert exc.value.witness == "m"


def test_median_in_total_order():
    assert pv.median_in(pv.RATIONAL, Fraction(1, 2), Fraction(3), Fraction(0)) == Fraction(1, 2)
    assert pv.median_in(pv.BOOL, 1, 0, 0) == 0
