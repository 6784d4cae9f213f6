"""spingeo: Clifford algebra, spinor field equations, hidden symmetries,
and topological band invariants.

Subpackages and modules:

* ``spingeo.algebra``   -- exact graded multivector arithmetic for Cl(p,q)
* ``spingeo.classify``  -- real/complex Clifford classification, index
  groups, and the tenfold periodic table
* ``spingeo.spinors``   -- explicit gamma representations, spinor inner
  products, Fierz bilinears and p-form currents
* ``spingeo.fields``    -- chart geometries, differential operators on
  form/spinor fields, equation residuals, brackets, symmetry and spin
  raising/lowering operators, polynomial solution-space solvers
* ``spingeo.bloch``     -- Bloch models, Chern numbers, Haldane phases,
  the Kane-Mele Z2 invariant
* ``spingeo.cli``       -- the ``spingeo`` command-line front end
"""

from .algebra import Multivector, Signature
from .kernels import USING_COMPILED

__all__ = ["Multivector", "Signature", "USING_COMPILED"]

__version__ = "0.1.0"
