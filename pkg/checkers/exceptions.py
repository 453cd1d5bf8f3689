from utils.exceptions import TripleToolkitError


class InvalidCircuit(TripleToolkitError):
    default_detail = "A G-circuit needs a nonempty path γ with r(γ) = g·s(γ)."
    default_code = "invalid_circuit"


class CertificateError(TripleToolkitError):
    """
    Raised by the independent verifier when a certificate does not establish
    the verdict it is attached to.
    """

    default_detail = "The certificate does not support the verdict."
    default_code = "certificate_error"

    def __init__(self, detail=None, code=None, property_name=None):
        self.property_name = property_name
        super().__init__(detail, code)

    def as_dict(self) -> dict:
        return {**super().as_dict(), "property": self.property_name}
