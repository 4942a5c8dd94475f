"""extricat: exact computations with twin cotorsion pairs on finite windows.

The package builds finite "windows" of two families of additive categories —
bounded derived categories of linearly oriented A_n quivers and module
categories of line quivers with monomial relations — as based categories with
exact rational structure constants, and then runs cotorsion-pair, stable
quotient, and localization machinery on top of them.

Layering, bottom to top:

``_linalg``   exact rational matrices (the only place ranks are computed)
``oracle``    quiver representations, complexes, chain maps mod homotopy
``model``     window tables: indecomposables, Hom/E/E² bases, triangles
``mesh``      derived A_n backend (mesh coordinates, combinatorial homs)
``intervals`` module-category backend (interval modules, combinatorial homs)
``subcats``   subcategory algebra: perps, closures, stable kernels, thickness
``cotorsion`` minimal approximations, cotorsion certificates, hereditariness
``localize``  stable quotients, the comparison functor, morphism classes
``fixtures``  packaged window fixtures with marker sets and expectations
``render``    deterministic text/SVG marker diagrams
``cli``       command-line interface
"""

__version__ = "0.1.0"
