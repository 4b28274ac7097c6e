"""Exception types shared across the toolkit."""


class PolesnakeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(PolesnakeError):
    """A parameter or input value violates its documented constraints."""


class ConfigError(PolesnakeError):
    """A configuration file or override could not be parsed or validated."""


class DegenerateCurve(PolesnakeError):
    """Curve geometry does not support the requested operation.

    Raised for zero-length curves and for curves whose curvature vanishes
    on an interior stretch, where torsion is undefined.
    """


class OutOfRange(PolesnakeError):
    """A requested arc-length window exceeds the sampled domain."""


class DomainTooShort(PolesnakeError):
    """A curvature profile does not span the full robot body."""


class JointLimitExceeded(PolesnakeError):
    """A generated joint angle exceeds the configured limit.

    Attributes:
        joint: 1-based index of the offending joint.
        value: the offending angle in radians.
    """

    def __init__(self, joint: int, value: float, limit: float):
        self.joint = joint
        self.value = value
        self.limit = limit
        super().__init__(
            f"joint {joint} angle {value:.6f} rad exceeds limit {limit:.6f} rad"
        )


class DegenerateCloud(PolesnakeError):
    """Module positions are too close to collinear for a full body frame.

    Attributes:
        frame: index of the offending frame when raised from a trajectory.
    """

    def __init__(self, message: str, frame: int | None = None):
        self.frame = frame
        super().__init__(message)


class Penetration(PolesnakeError):
    """A joint lies inside the pole beyond the allowed tolerance.

    Attributes:
        joint: 1-based index of the offending joint.
        distance: its distance to the pole axis in meters.
    """

    def __init__(self, joint: int, distance: float, limit: float):
        self.joint = joint
        self.distance = distance
        super().__init__(
            f"joint {joint} is {distance:.6f} m from the pole axis, "
            f"inside the allowed minimum {limit:.6f} m"
        )


class EmptyContacts(PolesnakeError):
    """A displacement step references a contact set with no contacts.

    Attributes:
        step: index of the offending step when known.
    """

    def __init__(self, message: str = "contact set is empty", step: int | None = None):
        self.step = step
        super().__init__(message)


class StepError(PolesnakeError):
    """Wraps an error raised while processing one gait or simulation step.

    Attributes:
        step: index of the step (or trial) that failed.
    """

    def __init__(self, step: int, message: str, label: str = "step"):
        self.step = step
        super().__init__(f"{label} {step}: {message}")
