from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addilog import chow
from addilog.chow import (
    EXAMPLE_SIGN,
    CurveCombination,
    ParamCurve,
    ZeroCycle,
    boundary,
    cathelineau_cycle,
    cathelineau_cycle_check,
    displayed_boundary,
    face_points,
    good_position,
    modulus_check,
    norm_generator,
    phi_map,
    phi_psi_check,
    point,
    psi_evaluate,
    psi_motivation_check,
    psi_regular_over_x0,
    standard_curves,
    verify_reciprocity,
)
from addilog.errors import (
    BadGenerator,
    ComponentOnFace,
    DegenerateArgument,
    DegenerateParams,
    ExtensionDegreeExceeded,
    NotGoodPosition,
    PreconditionFailed,
)
from addilog.fields import QQ, function_field, rational_function_field, simple_extension
from addilog.forms import DifferentialForm, ExtensionTraceData, differential, dlog
from addilog.poly import UPoly


@pytest.fixture(scope="module")
def Qa():
    K = function_field(QQ, ["a"])
    return K, K.gen("a")


def add_field():
    K = function_field(QQ, ["x", "xp", "y2"])
    return K, K.gen("x"), K.gen("xp"), K.gen("y2")


# boundaries

def test_global_sign_is_fixed():
    assert EXAMPLE_SIGN == -1


def test_z1_boundary(Qa):
    K, a = Qa
    C = standard_curves("z1", a=a)
    t = C.field.gen("t")
    assert C.x == t and C.ys == (1 + t / 2, 1 - a * a * t * t / 4)
    lit = boundary(C)
    want = ZeroCycle([
        (-1, point(K, -2, 1 - a * a)),
        (1, point(K, 2 / a, 1 + 1 / a)),
        (1, point(K, -2 / a, 1 - 1 / a)),
    ])
    assert lit == want
    assert lit == EXAMPLE_SIGN * displayed_boundary("z1", a=a)


def test_z2_boundary():
    C = standard_curves("z2")
    assert boundary(C) == EXAMPLE_SIGN * displayed_boundary("z2")
    assert good_position(C)


def test_additivity_boundary():
    K, x, xp, y2 = add_field()
    C = standard_curves("additivity", x=x, xp=xp, ys=[y2])
    assert boundary(C) == EXAMPLE_SIGN * displayed_boundary("additivity", x=x, xp=xp, ys=[y2])
    C12 = standard_curves("additivity", x=QQ(1), xp=QQ(2))
    t = C12.field.gen("t")
    assert C12.ys[0] == (1 - t) * (1 - 2 * t) / (1 - 3 * t)


def test_inverse_boundary():
    K, x, _, y2 = add_field()
    C = standard_curves("inverse", x=x, ys=[y2])
    assert boundary(C) == EXAMPLE_SIGN * displayed_boundary("inverse", x=x, ys=[y2])


def test_totaro_boundary_and_dropped_zero():
    C = standard_curves("totaro", x0=QQ(5), y1=QQ(2), z1=QQ(3))
    lit = boundary(C)
    assert lit == ZeroCycle([(1, point(QQ, 5, 6)), (-1, point(QQ, 5, 2)), (-1, point(QQ, 5, 3))])
    assert lit == EXAMPLE_SIGN * displayed_boundary("totaro", x0=QQ(5), y1=QQ(2), z1=QQ(3))
    dropped = [fp for fp in face_points(C) if fp.status.startswith("dropped")]
    assert any(fp.status == "dropped: coordinate 1" for fp in dropped)
    # no place over x = 0 since x is a nonzero constant
    assert modulus_check(C).places == [] and modulus_check(C)


def test_totaro_degenerate():
    with pytest.raises(DegenerateParams):
        standard_curves("totaro", x0=QQ(5), y1=QQ(2), z1=Fraction(1, 2))


def test_sign_is_global_across_families(Qa):
    K, a = Qa
    K2, x, xp, y2 = add_field()
    pairs = [
        (standard_curves("z1", a=a), displayed_boundary("z1", a=a)),
        (standard_curves("z2"), displayed_boundary("z2")),
        (standard_curves("additivity", x=x, xp=xp, ys=[y2]), displayed_boundary("additivity", x=x, xp=xp, ys=[y2])),
        (standard_curves("inverse", x=x, ys=[y2]), displayed_boundary("inverse", x=x, ys=[y2])),
        (standard_curves("totaro", x0=QQ(5), y1=QQ(2), z1=QQ(3)),
         displayed_boundary("totaro", x0=QQ(5), y1=QQ(2), z1=QQ(3))),
    ]
    signs = set()
    for C, disp in pairs:
        lit = boundary(C)
        signs.add(1 if lit == disp else -1 if lit == -disp else None)
    assert signs == {EXAMPLE_SIGN}


def test_nothing_dropped_silently(Qa):
    K, a = Qa
    for C in (standard_curves("z1", a=a), standard_curves("z2"),
              standard_curves("totaro", x0=QQ(5), y1=QQ(2), z1=QQ(3))):
        pts = face_points(C)
        kept = [fp for fp in pts if fp.status == "kept"]
        others = [fp for fp in pts if fp.status != "kept"]
        assert all(fp.status.startswith("dropped") for fp in others)
        assert sum(abs(m) * p.degree for m, p in boundary(C).items()) == sum(fp.order * fp.place.degree for fp in kept)


def test_boundary_is_linear(Qa):
    K, a = Qa
    z1 = standard_curves("z1", a=a)
    z2 = standard_curves("z2", field=z1.field)
    combo = CurveCombination([(2, z1), (-3, z2)])
    assert boundary(combo) == 2 * boundary(z1) - 3 * boundary(z2)
    assert boundary(combo + (-combo)) == 0


def test_higher_degree_face_points():
    F = rational_function_field(QQ, "t")
    t = F.gen("t")
    C = ParamCurve(t, [t * t - 2], F)
    Z = boundary(C)
    ((m, p),) = Z.items()
    assert m == -1 and p.degree == 2
    assert Z.total_multiplicity() == -2
    assert psi_evaluate(Z, QQ).is_zero()


def test_extension_degree_cap():
    F = rational_function_field(QQ, "t")
    t = F.gen("t")
    C = ParamCurve(t, [t ** 5 - 2], F)
    with pytest.raises(ExtensionDegreeExceeded):
        boundary(C)
    assert len(face_points(C, degree_cap=5)) == 2


def test_component_on_face():
    F = rational_function_field(QQ, "t")
    t = F.gen("t")
    with pytest.raises(ComponentOnFace):
        ParamCurve(t, [F.one], F)
    with pytest.raises(ComponentOnFace):
        ParamCurve(t, [F.zero], F)


# good position and modulus

def test_bad_cycle(Qa):
    K, a = Qa
    C = standard_curves("bad", a=a)
    v = good_position(C)
    assert not v and v.witness == "(1,∞,∞)"
    with pytest.raises(NotGoodPosition):
        boundary(C)
    assert modulus_check(C, 2)


def test_modulus_examples():
    K, x, xp, _ = add_field()
    rep = modulus_check(standard_curves("additivity", x=x, xp=xp), 2)
    assert rep
    (ledger,) = rep.places
    assert ledger.place == "(t)" and ledger.ord_y_minus_1 == [2] and ledger.m_sigma == 1
    Kx = function_field(QQ, ["x"])
    F = rational_function_field(Kx, "t")
    t = F.gen("t")
    bad = ParamCurve(t, [1 - Kx.gen("x") * t], F)
    rep = modulus_check(bad, 2)
    assert not rep and rep.to_verification().witness == "(t): 2·1 > 1"
    assert modulus_check(bad, 1)


def test_modulus_rejects_nonpositive():
    with pytest.raises(ValueError):
        modulus_check(standard_curves("z2"), 0)


# ψ and φ

def test_psi_single_point(Qa):
    K, a = Qa
    assert psi_evaluate(ZeroCycle([(1, point(K, 1 / a, a))]), K) == differential(a)


def test_psi_trace_point():
    Kb = function_field(QQ, ["b"])
    b = Kb.gen("b")
    kappa = simple_extension(Kb, "u", UPoly(Kb, [-b, 0, 1]))
    u = kappa.gen("u")
    p = chow.ClosedPoint(kappa, (u, kappa(b)), Kb)
    assert psi_evaluate(ZeroCycle([(1, p)]), Kb).is_zero()
    q = chow.ClosedPoint(kappa, (1 / (1 + u), kappa(b)), Kb)
    assert psi_evaluate(ZeroCycle([(1, q)]), Kb) == dlog(b).scale(2)


def test_phi_examples():
    K = function_field(QQ, ["a", "b"])
    a, b = K.gen("a"), K.gen("b")
    assert phi_map(a, [b], K) == ZeroCycle([(1, point(K, 1 / a, b))])
    assert phi_map(K.zero, [b], K) == 0
    assert phi_map(QQ(2), [QQ(3), QQ(5)]) == ZeroCycle([(1, point(QQ, Fraction(1, 2), 3, 5))])
    with pytest.raises(BadGenerator):
        phi_map(a, [K.one], K)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_psi_phi_symbolic(n):
    assert phi_psi_check(n)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_motivation_identity(n):
    assert psi_motivation_check(n)


def test_motivation_n1_value():
    K = function_field(QQ, ["x", "y1"])
    x, y = K.gen("x"), K.gen("y1")
    target = DifferentialForm.scalar(K, 1 / x).wedge(dlog(y)).exterior_derivative()
    assert target == differential(x).wedge(dlog(y)).scale(-1 / (x * x))


# reciprocity

def test_reciprocity_families(Qa):
    K, a = Qa
    K2, x, xp, y2 = add_field()
    assert verify_reciprocity(cathelineau_cycle(a))
    assert verify_reciprocity(standard_curves("additivity", x=x, xp=xp, ys=[y2]))
    assert verify_reciprocity(standard_curves("inverse", x=x, ys=[y2]))
    assert verify_reciprocity(standard_curves("z2"))
    assert verify_reciprocity(standard_curves("totaro", x0=QQ(5), y1=QQ(2), z1=QQ(3)))


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-9, max_value=9, max_denominator=9), st.fractions(min_value=-9, max_value=9, max_denominator=9))
def test_reciprocity_additivity_random(x, xp):
    if x == 0 or xp == 0 or x + xp == 0:
        return
    C = standard_curves("additivity", x=QQ(x), xp=QQ(xp), ys=[QQ(7)])
    assert verify_reciprocity(C)


def test_reciprocity_preconditions(Qa):
    K, a = Qa
    with pytest.raises(PreconditionFailed):
        verify_reciprocity(standard_curves("bad", a=a), 2)
    Kx = function_field(QQ, ["x"])
    F = rational_function_field(Kx, "t")
    t = F.gen("t")
    with pytest.raises(PreconditionFailed):
        verify_reciprocity(ParamCurve(t, [1 - Kx.gen("x") * t], F), 2)


def test_psi_regular(Qa):
    K, a = Qa
    assert psi_regular_over_x0(standard_curves("z1", a=a))
    K2, x, xp, _ = add_field()
    assert psi_regular_over_x0(standard_curves("additivity", x=x, xp=xp))
    Kx = function_field(QQ, ["x"])
    F = rational_function_field(Kx, "t")
    t = F.gen("t")
    with pytest.raises(PreconditionFailed):
        psi_regular_over_x0(ParamCurve(t, [1 - Kx.gen("x") * t], F))


# the Cathelineau cycle

def test_cathelineau_cycle_symbolic(Qa):
    K, a = Qa
    v = cathelineau_cycle_check(a)
    assert v, v.witness


def test_cathelineau_cycle_rational():
    assert cathelineau_cycle_check(Fraction(1, 3), QQ)
    with pytest.raises(DegenerateArgument):
        cathelineau_cycle_check(Fraction(1, 2), QQ)


def test_cathelineau_target_pair(Qa):
    K, a = Qa
    assert psi_evaluate(ZeroCycle([(1, point(K, 1 / a, a))]), K) == differential(a)
    pair = ZeroCycle([(1, point(K, 1 / a, a)), (1, point(K, 1 / (1 - a), 1 - a))])
    assert psi_evaluate(pair, K).is_zero()


# norms

def test_norm_examples():
    Kb = function_field(QQ, ["b"])
    b = Kb.gen("b")
    kappa = simple_extension(Kb, "u", UPoly(Kb, [Kb(-2), 0, 1]))
    ext = ExtensionTraceData(kappa)
    u = kappa.gen("u")
    N, v = norm_generator(ext, u, [b])
    assert N == 0 and v
    N, v = norm_generator(ext, 1 + u, [b])
    assert N == ZeroCycle([(1, point(Kb, Fraction(1, 2), b))]) and v
    assert psi_evaluate(N, Kb) == dlog(b).scale(2)
    N, v = norm_generator(ext, kappa(b), [b])
    assert N == ZeroCycle([(1, point(Kb, 1 / (2 * b), b))]) and v
