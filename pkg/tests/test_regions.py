import itertools

from hypothesis import given
from hypothesis import strategies as st

from bicyclic.monoid import Element, multiply
from bicyclic.regions import (
    INF,
    QUADRANT,
    Box,
    difference,
    intersect,
    is_subset,
    left_image,
    product_image,
    right_image,
    subtract,
    union_contains,
    union_points,
)

LIMIT = 14  # enumeration cut-off for unbounded sides


def finite_boxes(hi=6):
    def build(a, b, c, d):
        return Box(min(a, b), max(a, b), min(c, d), max(c, d))
    n = st.integers(0, hi)
    return st.builds(build, n, n, n, n)


def any_boxes(hi=6):
    def build(box, open_i, open_j):
        return Box(box.ilo, INF if open_i else box.ihi, box.jlo, INF if open_j else box.jhi)
    return st.builds(build, finite_boxes(hi), st.booleans(), st.booleans())


def points(box, limit=LIMIT):
    ihi = min(box.ihi, limit)
    jhi = min(box.jhi, limit)
    return {Element(i, j) for i in range(box.ilo, int(ihi) + 1) for j in range(box.jlo, int(jhi) + 1)}


elements = st.builds(Element, st.integers(0, 6), st.integers(0, 6))


@given(finite_boxes(), elements)
def test_left_image_exact_on_finite_boxes(box, d):
    image = left_image(box, d)
    assert {p for b in image for p in points(b, 100)} == {multiply(d, x) for x in points(box)}


@given(finite_boxes(), elements)
def test_right_image_exact_on_finite_boxes(box, e):
    image = right_image(box, e)
    assert {p for b in image for p in points(b, 100)} == {multiply(x, e) for x in points(box)}


@given(any_boxes(), elements)
def test_images_of_unbounded_boxes(box, d):
    # image of the truncated box lies in the symbolic image, and every image
    # point with small exponents comes from a small preimage
    for image_fn, op in ((left_image, lambda x: multiply(d, x)), (right_image, lambda x: multiply(x, d))):
        image = image_fn(box, d)
        small = {op(x) for x in points(box, 40)}
        assert all(union_contains(image, y) for y in small)
        window = {y for b in image for y in points(b, 12)}
        assert window <= small


@given(finite_boxes(4), finite_boxes(4))
def test_product_image_exact(x, y):
    image = product_image(x, y)
    want = {multiply(a, b) for a in points(x) for b in points(y)}
    assert {p for b in image for p in points(b, 100)} == want


@given(any_boxes(4), any_boxes(4))
def test_product_image_unbounded(x, y):
    image = product_image(x, y)
    small = {multiply(a, b) for a in points(x, 20) for b in points(y, 20)}
    assert all(union_contains(image, p) for p in small)
    assert {p for b in image for p in points(b, 8)} <= small


@given(any_boxes(), any_boxes())
def test_subtract(a, b):
    pieces = subtract(a, b)
    got = set().union(*(points(p) for p in pieces)) if pieces else set()
    assert got == points(a) - points(b)
    for p, q in itertools.combinations(pieces, 2):
        assert intersect(p, q) is None


@given(st.lists(any_boxes(), max_size=3), st.lists(any_boxes(), max_size=3))
def test_difference_and_subset(xs, ys):
    rest = difference(xs, ys)
    left = set().union(*(points(b) for b in xs)) if xs else set()
    right = set().union(*(points(b) for b in ys)) if ys else set()
    got = set().union(*(points(b) for b in rest)) if rest else set()
    assert got == left - right
    if is_subset(xs, ys):
        assert left <= right


def test_unbounded_box_has_no_infinite_corner_pieces():
    pieces = subtract(QUADRANT, Box(3, INF, 2, INF))
    assert all(p.ilo != INF and p.jlo != INF for p in pieces)
    assert sorted(map(str, pieces)) == ["[0,2]x[0,inf)", "[3,inf)x[0,1]"]


def test_union_points_without_repeats():
    boxes = [Box(0, 1, 0, 1), Box(1, 2, 1, 2), Box(5, 5, 0, INF)]
    pts = list(itertools.islice(union_points(boxes), 12))
    assert len(pts) == len(set(pts))
    assert set(pts[:7]) == points(boxes[0]) | points(boxes[1])
    assert all(p.i == 5 for p in pts[7:])


def test_box_points_cover_unbounded_box():
    pts = list(itertools.islice(Box(1, INF, 2, INF).points(), 10))
    assert pts[:3] == [Element(1, 2), Element(1, 3), Element(2, 2)]
    assert Box(1, INF, 2, INF).size() == INF and Box(0, 1, 0, 2).size() == 6
