"""geptrace - generalized eigenvalue toolkit.

Finds top-k subspaces of a generalized eigenvalue problem (A, B) by
unconstrained maximization of trace(W^T A W (2I - W^T B W)) and checks the
trace inequalities behind that characterization against a dense Jacobi
eigensolver.
"""

__version__ = "1.0.0"
__author__ = "geptrace Contributors"
__license__ = "MIT"
