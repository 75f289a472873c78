# Little cubes with exact rational coordinates.

from fractions import Fraction as Q
import random

from operadkit.cubes import (
    ROTATION_345,
    Affine,
    CubeElement,
    SignedPerm,
    center_eval,
    conjugate_about_center,
    cube_as_map,
    cube_membership,
    gamma_compose,
    lambda_geom,
    negative_facts,
    random_cube_element,
    suspend,
)

half = Q(1, 2)
g = CubeElement(1, ((Affine(half, 0),), (Affine(half, half),)))
f1 = CubeElement(1, ((Affine(half, Q(1, 4)),),))
f2 = CubeElement(1, ((Affine(1, 0),),))
print("gamma:", gamma_compose(g, [f1, f2]))
print("centers:", center_eval(g))
print("suspended:", suspend(f1))

# lambda: products of one cube from each input, conjugated by a coordinate swap
rng = random.Random(4)
a, b = random_cube_element(rng, 1, 2), random_cube_element(rng, 1, 2)
print("lambda:", lambda_geom(SignedPerm((2, 1), (1, 1)), [a, b]))

# a rotation keeps a square axis-aligned (it only moves it, here out of the
# unit cube) but tilts a rectangle
for name, cube in [("square", (Affine(half, 0), Affine(half, 0))),
                   ("rectangle", (Affine(half, 0), Affine(Q(1, 4), 0)))]:
    print(name, cube_membership(conjugate_about_center(ROTATION_345, cube_as_map(cube))))

report = negative_facts()
print(report.summary())
for note in report.notes:
    print("  ", note)
