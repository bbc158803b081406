from pydantic import ValidationError

CONFIG_EXIT_CODE = 2
RUNTIME_EXIT_CODE = 3


class AppError(Exception):
    def __init__(self, message: str, exit_code: int = RUNTIME_EXIT_CODE):
        self.message = message
        self.exit_code = exit_code
        super().__init__(message)


# ── Configuration ────────────────────────────────────────────────────────────


class ConfigError(AppError):
    def __init__(self, message: str):
        super().__init__(message, exit_code=CONFIG_EXIT_CODE)


class InvalidConfig(ConfigError):
    pass


# ── Geometry ─────────────────────────────────────────────────────────────────


class DegenerateProjection(AppError):
    def __init__(self, x: float, eps: float):
        super().__init__(f"Ground point at x={x} is at or behind the camera plane (eps={eps})")
        self.x = x


class HorizonDegenerate(AppError):
    def __init__(self, v: float, horizon: float):
        super().__init__(f"Pixel row v={v} is not below the horizon row {horizon}")
        self.v = v


# ── Topological graph ────────────────────────────────────────────────────────


class TooFewPoses(AppError):
    def __init__(self, count: int):
        super().__init__(f"At least 2 poses are required, got {count}")
        self.count = count


class DegenerateTrajectory(AppError):
    def __init__(self, message: str = "All consecutive pose distances are zero"):
        super().__init__(message)


class MissingDescriptors(AppError):
    def __init__(self, message: str = "Graph nodes carry no descriptors"):
        super().__init__(message)


class NoPath(AppError):
    def __init__(self, source: int, target: int):
        super().__init__(f"No path from node {source} to node {target}")
        self.source = source
        self.target = target


class NodeNotFound(AppError):
    def __init__(self, node_id: int):
        super().__init__(f"Node not found: {node_id}")
        self.node_id = node_id


# ── Subgoal / episode ────────────────────────────────────────────────────────


class NoTraversableRegion(AppError):
    def __init__(self, message: str = "Traversability mask has no traversable pixels"):
        super().__init__(message)


class EmptySuite(AppError):
    def __init__(self, message: str = "Suite contains no runs"):
        super().__init__(message)


class InfeasibleWaypoints(AppError):
    def __init__(self, message: str):
        super().__init__(message)


def config_error_from(exc: ValidationError, prefix: str = "") -> ConfigError:
    """Collapse a pydantic ValidationError into one path-qualified ConfigError."""
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"])
        where = ".".join(p for p in (prefix, loc) if p)
        parts.append(f"{where}: {err['msg']}" if where else err["msg"])
    return ConfigError("; ".join(parts))
