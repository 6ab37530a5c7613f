"""Exception hierarchy.  Every error carries a short machine-readable ``code``
that the command line reports verbatim."""


class Cu1Error(Exception):
    code = "Cu1Error"


class MixedScaleError(Cu1Error):
    code = "MixedScale"


class ModelMismatch(Cu1Error):
    code = "ModelMismatch"


class ParseError(Cu1Error):
    code = "ParseError"


class NotContained(Cu1Error):
    code = "NotContained"


class NotRepresentable(Cu1Error):
    code = "NotRepresentable"


class InvalidChain(Cu1Error):
    code = "InvalidChain"


class InconsistentChain(Cu1Error):
    code = "InconsistentChain"


class NaturalityViolation(Cu1Error):
    code = "NaturalityViolation"


class NotCancellative(Cu1Error):
    code = "NotCancellative"


class NonInjectiveSystem(Cu1Error):
    code = "NonInjectiveSystem"


class NotMonotone(Cu1Error):
    code = "NotMonotone"


class ConfigInvalid(Cu1Error):
    code = "ConfigInvalid"
