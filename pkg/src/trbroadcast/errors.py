"""Shared exception types."""


class InputError(ValueError):
    """An argument violates an operation's contract.

    The command-line layer maps this to exit code 2.
    """
