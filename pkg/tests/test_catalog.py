import pytest

from k3verify.catalog import CatalogError, load_catalog, parse_curves, parse_groups

SMALL = """
name C3
ambient P2
conductor 3
gen a = [[1, 0, 0], [0, z3, 0], [0, 0, z3^2]]
relation a^3
expect order 3 linear 3
"""


def write(tmp_path, text, curves=None):
    d = tmp_path / "cat"
    d.mkdir()
    (d / "groups.cat").write_text(text)
    if curves is not None:
        (d / "curves.cat").write_text(curves)
    return d


def test_empty_catalog_is_empty(tmp_path):
    cat = load_catalog(write(tmp_path, "# nothing here\n"))
    assert cat.groups == {} and cat.curves == {}
    assert parse_groups("") == []
    assert parse_curves("") == {}


def test_small_catalog_loads(tmp_path):
    cat = load_catalog(write(tmp_path, SMALL, "curve fermat vars 3 degree 3 = x0^3 + x1^3 + x2^3\n"), eager=True)
    assert cat.group("C3").order == 3
    assert cat.curve("fermat").grading.deg == 3
    with pytest.raises(CatalogError):
        cat.group("C5")
    with pytest.raises(CatalogError):
        cat.curve("quartic")


def test_single_file_is_a_group_catalog(tmp_path):
    p = tmp_path / "g.cat"
    p.write_text(SMALL)
    assert list(load_catalog(p).groups) == ["C3"]


def test_zero_determinant_rejected(tmp_path):
    text = SMALL.replace("[[1, 0, 0], [0, z3, 0], [0, 0, z3^2]]", "[[1, 0, 0], [0, 0, 0], [0, 0, 1]]")
    with pytest.raises(CatalogError, match="zero determinant"):
        load_catalog(write(tmp_path, text))


def test_infinite_order_rejected(tmp_path):
    text = SMALL.replace("[[1, 0, 0], [0, z3, 0], [0, 0, z3^2]]", "[[1, 1, 0], [0, 1, 0], [0, 0, 1]]")
    with pytest.raises(CatalogError, match="finite"):
        load_catalog(write(tmp_path, text))


def test_order_mismatch_strict_and_lenient(tmp_path):
    text = SMALL.replace("expect order 3 linear 3", "expect order 4")
    d = write(tmp_path, text)
    with pytest.raises(CatalogError, match="expected 4"):
        load_catalog(d, eager=True)
    assert load_catalog(d, strict=False).group("C3").order == 3


def test_wrong_size_rejected(tmp_path):
    text = SMALL.replace("ambient P2", "ambient P3")
    with pytest.raises(CatalogError, match="not 4x4"):
        load_catalog(write(tmp_path, text))


@pytest.mark.parametrize("bad", [
    "gen a = [[1, 0], [0, 1]",
    "gen a = 2 [[1, 0, 0], [0, 1, 0], [0, 0, 1]]",
    "gen a = [[1, , 0], [0, 1, 0], [0, 0, 1]]",
    "ambient P5",
    "expect order many",
    "relation a^^3",
    "colour blue",
    "conductor three",
])
def test_parse_errors_name_the_line(bad):
    text = "name G\n" + bad + "\n"
    with pytest.raises(CatalogError, match="line 2"):
        parse_groups(text)


def test_entry_before_name():
    with pytest.raises(CatalogError, match="line 1"):
        parse_groups("ambient P2\n")


def test_curve_parse_errors():
    with pytest.raises(CatalogError, match="line 1"):
        parse_curves("curve c vars 3 = x0\n")
    with pytest.raises(CatalogError, match="line 2"):
        parse_curves("\ncurve c vars 3 degree 2 = x0^2 + x1\n")


def test_prefactor_and_swap(cat):
    spec = cat.groups["L2(7)"]
    assert spec.generators[2].scale is not None
    h = cat.groups["H(D16)"]
    assert [g.swap for g in h.generators] == [False, False, True]
    assert "minus1" in cat.groups["T48"].matrices


def test_bundled_catalog_is_complete(cat):
    assert {"L2(7)", "M9", "N72", "T48", "C3xC7", "H(D16)", "Valentiner", "S4", "S5", "Q8", "Gamma"} <= set(cat.groups)
    for spec in cat.groups.values():
        assert spec.source
