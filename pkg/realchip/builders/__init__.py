from realchip.builders.examples import (
    banana_graph,
    check_admissible,
    cycle_graph,
    example1,
    example2,
    identity_structure,
    path_graph,
)
from realchip.builders.generator import PROFILES, random_real_graph
from realchip.builders.subdivision import edge_split, subdivide, subdivide_edges
