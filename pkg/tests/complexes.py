"""Small hand-built complexes shared by the tests."""

from simplicial_flows.chains import SimplicialComplex


def triangle():
    return SimplicialComplex.from_simplices([(0, 1, 2)])


def octahedron_surface():
    # consistently oriented: north cap counter-clockwise, south cap reversed
    tris = [(0, i, i % 4 + 1) for i in range(1, 5)] + [(5, i % 4 + 1, i) for i in range(1, 5)]
    return SimplicialComplex.from_simplices(tris, 6)


def fan_disk(n_rim: int = 6):
    """Cone from vertex 0 over a rim cycle 1..n_rim: a triangulated disk."""
    tris = [(0, i, i % n_rim + 1) for i in range(1, n_rim + 1)]
    return SimplicialComplex.from_simplices(tris, n_rim + 1)


def big_disk():
    """Two rings around a centre; has interior triangles away from the rim."""
    tris = [(0, i, i % 4 + 1) for i in range(1, 5)]
    for i in range(1, 5):
        j = i % 4 + 1
        a, b = 4 + i, 4 + j
        tris += [(i, a, b), (i, b, j)]
    return SimplicialComplex.from_simplices(tris, 9)


def torus(n: int = 3):
    """n x n grid torus; vertex (i, j) is i * n + j."""
    def v(i, j):
        return (i % n) * n + (j % n)
    tris = []
    for i in range(n):
        for j in range(n):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i + 1, j + 1), v(i, j + 1)))
    return SimplicialComplex.from_simplices(tris, n * n)


def four_cycle_graph():
    # 0 -> 1 -> 2 -> 3 -> 0
    return SimplicialComplex.from_simplices([(0, 1), (1, 2), (2, 3), (3, 0)], 4)
