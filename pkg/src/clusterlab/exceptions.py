"""Exception hierarchy.

Input errors (bad files, unknown columns, unparsable cells) derive from
:class:`InputError`; failures of an analysis precondition derive from
:class:`AnalysisError`. The CLI maps the two branches to distinct exit codes.
"""


class ClusterlabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ClusterlabError):
    """A problem with input data or its declared format."""


class AnalysisError(ClusterlabError):
    """An analysis precondition was violated."""


# -- tabular ingestion ------------------------------------------------------

class MalformedRowError(InputError):
    def __init__(self, line_number, expected, got):
        self.line_number = line_number
        self.expected = expected
        self.got = got
        super().__init__(
            f"line {line_number}: expected {expected} fields, got {got}"
        )


class NonNumericCellError(InputError):
    def __init__(self, line_number, column, token):
        self.line_number = line_number
        self.column = column
        self.token = token
        super().__init__(
            f"line {line_number}, column {column!r}: cannot parse {token!r} as a number"
        )


class ArffSyntaxError(InputError):
    """ARFF document is missing sections or contains an invalid declaration."""


class UnsupportedAttributeTypeError(InputError):
    """ARFF attribute type outside the supported numeric/nominal subset."""


class UnknownColumnError(InputError):
    def __init__(self, column, available):
        self.column = column
        super().__init__(
            f"no column named {column!r}; available: {', '.join(available)}"
        )


class InvalidClassValueError(InputError):
    def __init__(self, value, line=None):
        self.value = value
        where = f" (row {line})" if line is not None else ""
        super().__init__(f"class value {value!r}{where} is not 2 or 4")


# -- distances --------------------------------------------------------------

class DimensionMismatchError(AnalysisError):
    def __init__(self, len_a, len_b):
        super().__init__(f"vectors have different lengths: {len_a} vs {len_b}")


class EmptyCandidateSetError(AnalysisError):
    """No candidate rows remain after exclusion."""


# -- algorithms -------------------------------------------------------------

class EmptyDatasetError(AnalysisError):
    """The operation needs at least one data point."""


class TooFewPointsError(AnalysisError):
    def __init__(self, n, k):
        super().__init__(f"cannot form {k} clusters from {n} points")


class MissingCenterError(AnalysisError):
    def __init__(self, label):
        super().__init__(f"label {label} has no matching center")


class InvalidMedoidError(AnalysisError):
    """Medoid indices must be distinct and within range."""


class SampleTooLargeError(AnalysisError):
    def __init__(self, m, n):
        super().__init__(f"sample size {m} exceeds n - 1 = {n - 1}")


class SingleClusterError(AnalysisError):
    """Silhouette needs at least two distinct clusters."""


class NoLabelsError(AnalysisError):
    """Cluster naming needs a class label for every point."""


class NotFittedError(ClusterlabError):
    """Estimator method called before fit()."""
