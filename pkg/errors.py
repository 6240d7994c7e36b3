class RoutingError(Exception):
    pass


# client errors: bad input or usage, reported with exit code 1

class ClientError(RoutingError):
    pass


class ParseError(ClientError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"Line [{line}]: {message}")


class NonPositiveWeight(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class DirectedInput(ClientError):
    pass


class NotStronglyConnected(ClientError):
    pass


class DisconnectedInput(ClientError):
    pass


class InsufficientData(ClientError):
    pass


class UnreachablePair(ClientError):
    pass


class MemberUnreachable(ClientError):
    pass


class NotATree(ClientError):
    pass


class GenerationFailed(ClientError):
    pass


class BudgetExceeded(ClientError):
    pass


# invariant violations: a routing guarantee broke, reported with exit code 2

class InvariantViolation(RoutingError):
    pass


class MissingTreeRecord(InvariantViolation):
    pass


class NotInSubtreeRecord(InvariantViolation):
    pass


class HeaderExhausted(InvariantViolation):
    pass


class LoopBudgetExceeded(InvariantViolation):
    pass


class LocalityViolation(InvariantViolation):
    pass
