"""Exception types shared across the package."""


class RejectedInput(ValueError):
    """An argument violates an operation's precondition."""


class NoSolution(ArithmeticError):
    """The bounded-degree Hamiltonian system has no solution.

    Either the 1-form is not Hamiltonian or the degree bound is too small;
    the two cases cannot be told apart.
    """


class NonUniqueSolution(RejectedInput):
    """The homogeneous Hamiltonian system has a nontrivial polynomial kernel."""


class NotAWeakSymmetry(RejectedInput):
    """A triple fails the weak-symmetry invariants."""


class InternalConsistencyError(RuntimeError):
    """A computed value violates an invariant it is guaranteed to satisfy.

    Carries the witness (usually a residual) so the offending scenario can
    be inspected.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
