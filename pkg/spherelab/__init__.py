"""spherelab package exports."""

from .autom import (
    FiniteGraph,
    automorphism_group,
    enumerate_locally_injective_maps,
    is_locally_injective,
    kneser_graph,
    sym_action_matches,
)
from .disk_calculus import Disk, disk_sphere_disjoint, disks_disjoint, good_pair_check, goodness, make_disk
from .glued_model import (
    GluedManifold,
    GluedPants,
    Interior,
    OnceCrossing,
    YSphere,
    disjoint,
    enumerate_model_pants,
    exchange,
    is_pants,
    make_interior,
    make_once_crossing,
    model_vertices,
    split_spheres_for,
)
from .punctured_complex import PuncturedComplex, TreePants, build_complex, enumerate_pants, kneser_subgraph
from .rank2 import (
    FareyFins,
    WitnessMap,
    build_farey_fins,
    convex_hull_farey,
    find_nonrigidity_witness,
    run_battery,
    verify_witness,
)
from .reports import Report
from .rigid_sets import (
    RigidSetX,
    build_rigid_set,
    construct_split_pairs,
    detect_intersection,
    exhaust,
    expand_fully_split,
    twin_crossing_certificates,
)
from .splits import Split, canonicalize, intersects, is_nested, m04_third_sphere, size
from .store import load_vertex_sets, write_vertex_sets

__all__ = [
    "Split",
    "canonicalize",
    "is_nested",
    "intersects",
    "size",
    "m04_third_sphere",
    "PuncturedComplex",
    "TreePants",
    "build_complex",
    "enumerate_pants",
    "kneser_subgraph",
    "Disk",
    "make_disk",
    "disks_disjoint",
    "disk_sphere_disjoint",
    "goodness",
    "good_pair_check",
    "GluedManifold",
    "GluedPants",
    "YSphere",
    "Interior",
    "OnceCrossing",
    "make_interior",
    "make_once_crossing",
    "disjoint",
    "model_vertices",
    "is_pants",
    "split_spheres_for",
    "exchange",
    "enumerate_model_pants",
    "RigidSetX",
    "build_rigid_set",
    "detect_intersection",
    "construct_split_pairs",
    "expand_fully_split",
    "exhaust",
    "twin_crossing_certificates",
    "FareyFins",
    "WitnessMap",
    "build_farey_fins",
    "convex_hull_farey",
    "find_nonrigidity_witness",
    "verify_witness",
    "run_battery",
    "FiniteGraph",
    "automorphism_group",
    "sym_action_matches",
    "is_locally_injective",
    "enumerate_locally_injective_maps",
    "kneser_graph",
    "Report",
    "write_vertex_sets",
    "load_vertex_sets",
]
