import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowtrotter.circuit import Circuit, DepthMode, Tableau, cx, cx_depth
from flowtrotter.pauli import PauliString
from flowtrotter.synthesis import (DEPTH_BOUND, Category, EncoderVerificationError, SynthesisError,
                                   bipartite_edge_coloring, component_stabilizers, css_frame,
                                   depth1_encoder_exists, resolve_category, search_cx_layers,
                                   synthesize_component_encoder, verify_encoder)

from encoder_cases import CASES

P = PauliString.from_label

EXPECTED = {
    "JWAugmented": (Category.JW_AUGMENTED_TRIANGLE, 2),
    "SingleAncilla3Edge": (Category.TRIANGLE_3EDGES, 2),
    "Toric4Edge": (Category.TORIC_PERIODIC, 4),
    "Ratio3to2": (Category.MIXED_3TO2, 3),
    "Ratio2to1": (Category.SQUARE_2TO1, 2),
    "VC-EA": (Category.VC_TRIANGLE, 2),
    "VC-NO": (Category.VC_SQUARE, 2),
    "DK-PQ": (Category.DK_PERIODIC_TRIANGLE, 4),
    "GSE-EA": (Category.GSE_TRIANGLE_NORTH, 2),
    "GSE-SO": (Category.GSE_TRIANGLE_SOUTH_SYM, 2),
    "GSE-NO": (Category.GSE_TRIANGLE_NORTH, 2),
    "KW-EA": (Category.KW_CZ_LAYERS, 2),
    "KW-WE": (Category.KW_CZ_LAYERS, 0),
}


def synth(key):
    enc, comp, label = CASES[key]
    cat = resolve_category(enc, comp, label)
    return enc, comp, cat, synthesize_component_encoder(cat, comp, enc)


@pytest.mark.parametrize("key", sorted(EXPECTED))
def test_encoder_depth_table(key):
    _, _, cat, e = synth(key)
    want_cat, want_depth = EXPECTED[key]
    assert cat == want_cat
    assert e.depth("cx") == want_depth
    bound = DEPTH_BOUND[cat]
    assert bound is None or e.depth("cx") <= bound


def test_gse_west_uses_swap_layer():
    _, _, cat, e = synth("GSE-WE")
    assert cat == Category.GSE_HORIZONTAL_SWAPPED
    swapless = Circuit(e.circuit.n_qubits, [[g for g in L if g.name != "swap"] for L in e.circuit.layers])
    assert cx_depth(swapless, DepthMode.CX) == 2
    assert e.depth("native") == 3


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_jw_ladder_grows_linearly(n):
    _, comp, cat, e = synth(f"JWLadder-{n}")
    assert cat == Category.JW_LADDER
    assert e.depth("cx") == n - 1 == len(comp)


@pytest.mark.parametrize("key", sorted(CASES))
def test_encoders_verify_independently(key):
    enc, comp, _, e = synth(key)
    stabs = component_stabilizers(enc, comp)
    tab = Tableau.from_circuit(e.circuit)
    landed = set()
    for s in stabs:
        img = tab.conjugate(s)
        assert img.weight == 1 and img.x == 0
        landed.add(img.support[0])
    assert len(landed) == len(stabs)


@pytest.mark.parametrize("key", sorted(k for k in CASES if not k.startswith("KW-WE")))
def test_dropping_an_entangling_gate_breaks_the_encoder(key):
    enc, comp, _, e = synth(key)
    stabs = component_stabilizers(enc, comp)
    for li, layer in enumerate(e.circuit.layers):
        for gi, g in enumerate(layer):
            if g.name not in ("cx", "cz"):
                continue
            layers = [list(L) for L in e.circuit.layers]
            del layers[li][gi]
            with pytest.raises(EncoderVerificationError):
                verify_encoder(Circuit(e.circuit.n_qubits, layers), stabs)


@pytest.mark.parametrize("key", sorted(k for k in CASES if not k.startswith(("JWLadder", "KW"))))
def test_no_depth_one_encoder(key):
    enc, comp, _ = CASES[key]
    stabs = component_stabilizers(enc, comp)
    assert max(p.weight for p in stabs) >= 3
    assert len({q for p in stabs for q in p.support}) <= 8
    assert not depth1_encoder_exists(stabs)


def test_depth_one_positive_control():
    assert depth1_encoder_exists([P("XXII"), P("IIZZ")])
    assert depth1_encoder_exists([P("YZ")])
    assert not depth1_encoder_exists([P("XXI"), P("IZZ")])


def test_search_matches_template_optimum():
    enc, comp, _ = CASES["VC-EA"]
    frame = css_frame(component_stabilizers(enc, comp))
    assert search_cx_layers(frame, 1) is None
    layers = search_cx_layers(frame, 2)
    assert layers is not None and len(layers) == 2


def test_css_frame_types():
    frame = css_frame([P("XZI"), P("IXZ")])
    assert frame is not None
    for st_, t in zip(frame.stabilizers, frame.types):
        assert set(st_.letters().replace("I", "")) == {t}
    # pairwise-commuting, but the type constraints form an odd cycle
    assert css_frame([P("XX"), P("ZZ"), P("YY")]) is None


def test_template_mismatch_raises():
    enc, comp, _ = CASES["VC-EA"]
    with pytest.raises(SynthesisError):
        synthesize_component_encoder(Category.TORIC_PERIODIC, comp, enc)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=25))
def test_edge_colouring_is_proper_and_tight(edges):
    colours = bipartite_edge_coloring(edges)
    assert sorted(e for c in colours for e in c) == sorted(edges)
    for c in colours:
        left = [u for u, _ in c]
        right = [v for _, v in c]
        assert len(set(left)) == len(left) and len(set(right)) == len(right)
    deg = {}
    for u, v in edges:
        deg[("L", u)] = deg.get(("L", u), 0) + 1
        deg[("R", v)] = deg.get(("R", v), 0) + 1
    assert len(colours) == max(deg.values())
