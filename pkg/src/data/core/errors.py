"""
Module containing the base exception of the lab. Every package defines its own
subclass next to the code that raises it, so that callers can either catch
a precise error (e.g. 'synthesis.AttackError') or everything the lab can
raise at once ('core.LabError').

Caught in main.main(): the formatted message is printed and the program exits
with code 2.
"""


class LabError(Exception):
    """
    Generic error thrown by any part of the lab.

    It carries a human readable 'message' and an optional 'context', the
    offending object (a node pair, a file path, a config key...). The context
    is appended to the message when the error is printed.
    """

    def __init__(self, message, context=None):
        """
        Constructor for LabError. Takes the 'message', the string that will be
        displayed, and optionally the 'context' that caused it.
        """
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        """Return a formatted string containing the error message."""
        if self.context is None:
            return f'{self.__class__.__name__}: {self.message}'
        return f'{self.__class__.__name__}: {self.message} ({self.context})'
