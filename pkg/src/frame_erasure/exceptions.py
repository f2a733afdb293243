class FrameError(ValueError):
    """Base class for errors raised by frame_erasure."""


class DimensionMismatch(FrameError):
    pass


class NotAFrame(FrameError):
    """The vectors do not span the space (frame operator not positive definite)."""


class SingularAxz(FrameError):
    """The k x k erasure matrix is not invertible; no matrix-method dual exists."""


class SingularOperator(FrameError):
    """``I - sum_i z_i x_i^T`` is not invertible on the ambient space."""


class MrcUnattainable(FrameError):
    """No generated frame satisfied the minimal redundancy condition."""


class IterationStopped(FrameError):
    """The rank-one iteration hit ``<u_j, x_j> = 1`` before removing every index."""
