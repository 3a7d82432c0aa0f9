"""Exception hierarchy shared by every module."""


class ArgabsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ArgabsError, ValueError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UndeclaredArgumentError(ParseError):
    """An attack mentions an argument that was never declared."""

    def __init__(self, arg, line=None, source=None):
        self.arg = arg
        super().__init__(f"attack references undeclared argument {arg!r}", line, source)


class InvalidIdentifierError(ArgabsError, ValueError):
    pass


class UnknownArgumentError(ArgabsError, KeyError):
    def __init__(self, arg):
        self.arg = arg
        super().__init__(arg)

    def __str__(self):
        return f"unknown argument {self.arg!r}"


class MembershipError(ArgabsError, ValueError):
    """A set was expected to lie inside some carrier but does not."""

    def __init__(self, missing, what="carrier"):
        self.missing = missing
        super().__init__(f"{missing!r} is not a member of the {what}")


class BoundExceededError(ArgabsError):
    def __init__(self, size, bound, what="input"):
        self.size = size
        self.bound = bound
        super().__init__(f"{what} size {size} exceeds bound {bound}")


class OrderLawError(ArgabsError, ValueError):
    """A relation failed a required order law; ``witness`` is the offending tuple."""

    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"relation is not {law}; witness {witness!r}")


class CarrierMismatchError(ArgabsError, ValueError):
    pass


class PartitionError(ArgabsError, ValueError):
    def __init__(self, message, witness=None, line=None, source=None):
        self.witness = witness
        self.line = line
        self.source = source
        self.detail = message
        where = "".join(f"{part}:" for part in (source, line) if part is not None)
        super().__init__(f"{where} {message}" if where else message)


class RefinementError(ArgabsError):
    pass


class StaleWitnessError(RefinementError):
    pass


class NoSplittableBlockError(RefinementError):
    pass
