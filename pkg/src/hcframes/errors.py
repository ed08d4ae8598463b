class ShapeError(ValueError):
    """Operands live in different algebras, ranks or measure spaces."""


class SingularError(ArithmeticError):
    def __init__(self, message, block=None, min_singular_value=None):
        super().__init__(message)
        self.block = block
        self.min_singular_value = min_singular_value


class NotAFrameError(ValueError):
    pass


class NotRieszError(ValueError):
    pass
