"""Exact chain-level free loop space homology for finitely presented
simplicial sets.

The pipeline: a simplicial presentation becomes a categorical coalgebra
of normalized chains (simplicial, catcoalg), whose cobar construction is
a dg category with an optional localization at the 1-simplices (cobar).
Loop space homology is computed from the closed-necklace complex
(cohochschild) or, as an independent cross-check, from the cyclic bar
complex of the cobar category (hochschild).  For one-vertex inputs the
localized cobar construction is a dg Hopf algebra whose adjoint action
builds a twisted tensor model of the same homology (hopf).  All
arithmetic is exact (linalg).
"""

__version__ = "0.1.0"

from .catcoalg import (CatCoalgebra, CatCoalgebraMorphism, check_axioms,
                       check_morphism, compose, from_presentation,
                       identity_morphism)
from .cobar import CobarCategory, CobarWord
from .cohochschild import (AssembledContraction, CoChGen,
                           CoHochschildComplex, ContractionMaps, QComplex,
                           QGen)
from .fixtures import STANDARD_FIXTURES
from .hochschild import BarComplex, BarGen, CHGen, HochschildComplex
from .hopf import (HopfCobar, LoopComparison, TwistedComplex, TwistedGen,
                   constant_loop, twisting_cochain_residuals,
                   universal_twisting_cochain)
from .linalg import (CoefficientRing, HomologyResult, SparseMatrix, QQ, ZZ,
                     homology_of_slice, prime_field, rank,
                     smith_normal_form)
from .simplicial import (SimplexRef, SimplicialSetPresentation,
                         validate_presentation)

to_categorical_coalgebra = from_presentation
