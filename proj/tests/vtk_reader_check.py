"""Reads a VTK frame written by the solver with meshio and checks its layout."""

import sys

import meshio
import numpy as np


def main(path, elements, order):
    m = meshio.read(path)
    per = (order + 1) ** 2
    quads = m.cells_dict["quad"]
    assert quads.shape == (elements * per, 4), quads.shape
    assert m.points.shape[0] == elements * (order + 2) ** 2, m.points.shape
    troubled = np.ravel(m.cell_data["troubled"][0])
    assert set(np.unique(troubled)) <= {0, 1}
    for e in range(elements):
        assert len(set(troubled[e * per:(e + 1) * per])) == 1
    rho = np.ravel(m.point_data["density"])
    assert rho.min() > 0.0
    for name in ("velocity_x", "velocity_y", "pressure", "energy_ratio"):
        assert name in m.point_data or name in m.cell_data, name
    print(f"read {len(quads)} cells, {int(troubled.sum() // per)} troubled elements")


if __name__ == "__main__":
    main(sys.argv[1], int(sys.argv[2]), int(sys.argv[3]))
