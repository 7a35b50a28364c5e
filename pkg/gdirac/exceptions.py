class NumericError(Exception):
    """Base class for failures of a numerical computation (exit status 3)."""


class PoleError(NumericError):

    def __init__(self, edge_id, z):
        self.edge_id = edge_id
        self.z = z
        super().__init__(f"pole of the Weyl block of edge {edge_id} at z={z}")


class CutError(NumericError):

    def __init__(self, message="contour crosses cut"):
        super().__init__(message)


class KernelEmpty(NumericError):

    def __init__(self, z, sigma):
        self.z = z
        self.sigma = sigma
        super().__init__(f"kernel empty at z={z} (relative singular value {sigma:.3e})")


class CertificationError(NumericError):
    pass
