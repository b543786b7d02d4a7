"""Speedup exponents for layered search over the n-dimensional lattice.

Subpackages by concern:

- ``lattice``      -- lattice graphs, edge oracles, classical DP path solver
- ``polynomials``  -- exact generating polynomials and coefficient extraction
- ``saddle``       -- saddle-point infimum for coefficient asymptotics
- ``optimizer``    -- the exponent program and its minimization (T_1..T_D)
- ``bounds``       -- analytic lower-bound constants and inequalities
- ``cost_sim``     -- exact query-cost recursion of the layered algorithm
- ``smc``          -- Set Multicover dynamic programming solvers
- ``cli``          -- command line entry points
"""

__version__ = "0.1.0"
