"""
Module that contains the EventHandler and EventData class.
"""


class EventHandler:
    """
    An EventHandler holds a callback (a reference to a function) and the
    arguments (args or kwargs) that will be passed to it after the EventData.

    EventHandlers are used by Listeners to execute functions when an event
    is launched.

    NOTE: Two EventHandlers are equal when the callback and its arguments are
    equal. So two EventHandlers pointing to the same method of two different
    objects are different, but two EventHandlers pointing to the same method of
    the same object are equal.
    """

    def __init__(self, callback, *args, **kwargs):
        """
        Constructor for EventHandler. It takes a function 'callback' and the
        arguments to pass to it in form of args and kwargs.
        """
        self._callback = callback
        self._args = tuple(args)
        self._kwargs = dict(kwargs)

    def execute(self, event_data):
        """
        Execute the callback.

        If 'event_data' is None, it is not passed: only the args and kwargs
        will be passed to the callback.
        """
        if event_data is None:
            self._callback(*self._args, **self._kwargs)
        else:
            self._callback(event_data, *self._args, **self._kwargs)

    def __eq__(self, other):
        """Return true if callback and passed parameters are the same."""
        if not isinstance(other, EventHandler):
            return NotImplemented
        return self._callback == other._callback and \
            self._args == other._args and self._kwargs == other._kwargs

    def __hash__(self):
        return hash((self._callback, self._args,
                     tuple(sorted(self._kwargs.items()))))

    def __str__(self):
        return f'EventHandler({self._callback}, {self._args}, {self._kwargs})'


class EventData:
    """
    Class that is used by events to transfer all the data that they
    need to give the EventHandlers.

    It doesn't have any fixed instance fields, instead each key value pair
    passed to the constructor becomes one of the EventData's instance fields.
    """

    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)

    def __repr__(self):
        fields = ', '.join(f'{k}={v!r}' for k, v in self.__dict__.items())
        return f'EventData({fields})'
