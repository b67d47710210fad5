"""Golden-ratio geometry of finite Blaschke products and their Poncelet ellipses."""

__version__ = "0.1.0"

from .blaschke import (
    BlaschkeProduct,
    construct_identifying_product,
    evaluate,
    identification_residual,
    is_interspersed,
    preimages_on_circle,
)
from .golden import (
    ALPHA,
    CHORD_THRESHOLD,
    ChordSolution,
    GoldenConstants,
    divides_in_golden_ratio,
    golden_chords,
    golden_rectangle,
    golden_triangle,
    regular_polygon,
)
from .numerics import ComplexPolynomial, TolerancePolicy, poly_eval, poly_roots, reversed_conjugate, solve_real_1d
from .poncelet import (
    Chord,
    Ellipse,
    InscribedEllipseSolution,
    blaschke3_ellipse,
    degree4_ellipse,
    degree4_product_from_foci,
    golden_blaschke_ellipse,
    inscribed_ellipse_foci,
    is_tangent,
    rotate_blaschke_ellipse,
    steiner_foci,
    verify_poncelet,
)
from .render import SceneDescription, figure_scene, render_svg
