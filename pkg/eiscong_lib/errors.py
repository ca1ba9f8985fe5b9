# --- eiscong_lib/errors.py ---
"""
eiscong_lib/errors.py: Domain errors raised by the library.

Every error carries a kebab-case code which the CLI echoes back in its
machine-readable error object.
"""


class DomainError(ValueError):
    """A violated mathematical precondition, identified by a stable code."""

    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code
        self.detail = detail

    def to_dict(self) -> dict:
        return {"error": self.code, "detail": self.detail}


class NotIntegralError(DomainError):
    """Raised when a value with an ℓ in some denominator is reduced modulo ℓ."""

    def __init__(self, detail: str = "", index: int | None = None):
        super().__init__("not-integral", detail)
        self.index = index

    def to_dict(self) -> dict:
        data = super().to_dict()
        if self.index is not None:
            data["index"] = self.index
        return data
