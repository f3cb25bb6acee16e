from fractions import Fraction

import pytest

from waifi.infnear import (
    Configuration,
    IndexMismatch,
    InfNearPoint,
    NotSubconfiguration,
    PairingVector,
    e_vector,
    export_proximity_graph,
    multiplicity_system,
    pairing,
    proximity_graph_dot,
)


def pt(pid, parent, prox, coordinate=None, branch="V1"):
    level = 0 if parent is None else None
    return InfNearPoint(
        pid,
        parent,
        None if parent is None else branch,
        coordinate,
        level,
        frozenset(prox),
    )


def chain_conf(n):
    """A root with a chain of free points above it: 0 <- 1 <- ... <- n-1."""
    pts = [pt(0, None, ())]
    for i in range(1, n):
        pts.append(pt(i, i - 1, (i - 1,)))
    return Configuration(pts)


def satellite_conf():
    """root <- A <- F, with F also proximate to root via a satellite pair:
    R1 proximate to {F, A}, R2 proximate to {F, root}."""
    return Configuration(
        [
            pt(0, None, ()),
            pt(1, 0, (0,)),
            pt(2, 1, (1, 0)),
            pt(3, 2, (2, 1)),
            pt(4, 2, (2, 0)),
        ]
    )


def test_configuration_validation():
    with pytest.raises(ValueError):
        Configuration([pt(0, None, ()), pt(0, None, ())])  # duplicate id
    with pytest.raises(ValueError):
        Configuration([pt(1, 0, (0,))])  # missing parent
    with pytest.raises(ValueError):
        Configuration([pt(0, None, ()), pt(1, 0, ())])  # not prox to parent


def test_free_and_satellite():
    conf = satellite_conf()
    assert conf.point(1).free
    assert conf.point(2).satellite
    assert conf.free_points() == [0, 1]
    assert conf.maximal_points() == [3, 4]
    assert conf.ancestors(3) == [0, 1, 2, 3]
    assert conf.is_infinitely_near(4, 0)
    assert not conf.is_infinitely_near(1, 4)


def test_subconfiguration_restricts_proximity():
    conf = satellite_conf()
    sub = conf.subconfiguration([0, 1, 2])
    assert sub.order == (0, 1, 2)
    assert sub.point(2).proximate_to == frozenset({0, 1})
    sub2 = conf.subconfiguration([0, 1])
    assert sub2.maximal_points() == [1]


def test_multiplicity_system_chain():
    conf = chain_conf(4)
    m = multiplicity_system(conf.subconfiguration([0, 1, 2]), conf)
    # unit multiplicity along the chain, 0 above it
    assert m == {0: 1, 1: 1, 2: 1, 3: 0}


def test_multiplicity_system_satellite():
    conf = satellite_conf()
    m = multiplicity_system(conf, conf)
    # maximal points get 1; each lower point the sum over proximate ones
    assert m[3] == 1 and m[4] == 1
    assert m[2] == m[3] + m[4] == 2
    assert m[1] == m[2] + m[3] == 3
    assert m[0] == m[1] + m[2] + m[4] == 6


def test_multiplicity_system_not_parent_closed():
    conf = satellite_conf()
    # a configuration whose points exist in conf but whose base point is not
    # a root there
    sub = Configuration([pt(2, None, ()), pt(3, 2, (2,))])
    with pytest.raises(NotSubconfiguration):
        multiplicity_system(sub, conf)


def test_pairing_and_e_vectors():
    conf = chain_conf(3)
    a = PairingVector.make(conf, 2, {0: 1, 1: 1, 2: 0})
    b = PairingVector.make(conf, 3, {0: 2, 1: 1, 2: 1})
    assert pairing(a, b) == Fraction(2 * 3 - 1 * 2 - 1 * 1)
    assert pairing(a, a) == Fraction(4 - 2)
    e1 = e_vector(conf, 1)
    assert e1.as_list() == [0, 0, -1, 1]
    # <e_P, a> = a_P - sum of a at points proximate to P
    assert pairing(e1, a) == a.components[1] - a.components[2]


def test_pairing_index_mismatch():
    a = PairingVector.make(chain_conf(2), 1, {})
    b = PairingVector.make(chain_conf(3), 1, {})
    with pytest.raises(IndexMismatch):
        pairing(a, b)
    with pytest.raises(IndexMismatch):
        a + b


def test_vector_arithmetic():
    conf = chain_conf(2)
    a = PairingVector.make(conf, 1, {0: 2, 1: 3})
    assert (a + a).as_list() == [2, 4, 6]
    assert a.scale(Fraction(1, 2)).as_list() == [
        Fraction(1, 2),
        Fraction(1),
        Fraction(3, 2),
    ]


def test_proximity_graph_export():
    conf = satellite_conf()
    doc = export_proximity_graph(conf, dicritical=[3])
    assert [p["id"] for p in doc["points"]] == [0, 1, 2, 3, 4]
    assert [0, 1] in doc["solid_edges"]
    # dashed edges are the non-parent proximities
    assert doc["dashed_edges"] == [[0, 2], [1, 3], [0, 4]]
    dot = proximity_graph_dot(conf, dicritical=[3])
    assert "style=dashed" in dot and "doublecircle" in dot
