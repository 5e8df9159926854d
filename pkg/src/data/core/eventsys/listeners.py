"""Module containing the various listener objects."""
from core.eventsys.handling import EventHandler


class Listener:
    """
    Base Listener object. It should never be used. Use one of its subclasses
    instead.

    There cannot be more than one Listener with the same EventHandler listening
    to the same event. At Listener creation, if another Listener with an equal
    EventHandler is already registered for the same event, that one is
    returned instead of creating a new one. This behaviour can be overridden
    by passing the 'force' flag.

    Every Listener subclass contains a static dictionary that maps a set of
    Listeners to the id of an event. When a Listener starts listening to the
    event it is registered in the dictionary and becomes visible to the
    sources; when it stops listening it is removed.
    """

    listeners = {}

    def __new__(cls, event_handler, type_id, force=False):
        """
        To avoid having multiple Listeners with the same EventHandler on the
        same event, search the registry for an equal Listener first and return
        it if found. A new Listener is created otherwise, or when forced.
        """
        if not isinstance(event_handler, EventHandler):
            raise TypeError(f'Passed argument {event_handler} is not an '
                            'EventHandler.')
        if type_id not in cls.listeners:
            raise KeyError(f'{cls.__name__} has no event with id {type_id}')
        if not force:
            listener = cls.find_listener(event_handler, type_id)
            if listener is not None:
                return listener
        return object.__new__(cls)

    def __init__(self, event_handler, type_id, force=False):
        self.event_handler = event_handler
        self.type_id = type_id
        self.forced = force

    def notify(self, event_data):
        """Execute the stored EventHandler passing 'event_data'"""
        self.event_handler.execute(event_data)

    def listen(self):
        """Listen for the event with id 'self.type_id'"""
        self.__class__.listeners[self.type_id].add(self)
        return self

    def ignore(self):
        """Stop listening to the event with id 'self.type_id'"""
        self.__class__.listeners[self.type_id].discard(self)

    @classmethod
    def find_listener(cls, event_handler, type_id):
        """
        Get the Listener registered for 'type_id' that has an EventHandler
        equal to 'event_handler', or None.
        """
        for listener in cls.listeners[type_id]:
            if listener.event_handler == event_handler:
                return listener
        return None

    @classmethod
    def clear(cls):
        """Unregister every Listener of this class"""
        for registered in cls.listeners.values():
            registered.clear()

    def __eq__(self, other):
        if not isinstance(other, Listener):
            return NotImplemented
        return self.event_handler == other.event_handler and \
            self.type_id == other.type_id and self.forced == other.forced

    def __hash__(self):
        return hash((self.event_handler, self.type_id, self.forced))


class TrainEventListener(Listener):
    """
    Listener that listens to TrainEvents. The EventData of an EPOCH event has
    the fields 'epoch', 'train_loss', 'val_loss' and 'best_epoch'; the one of
    a STOPPED event has 'report', the finished TrainReport.
    """

    EPOCH = 0
    STOPPED = 1

    listeners = {EPOCH: set(),
                 STOPPED: set()}


class RunEventListener(Listener):
    """
    Listener that listens to RunEvents. The EventData of an ITEM_DONE event
    has the fields 'item' and 'records'; the one of EXPERIMENT_DONE has
    'experiment' and 'records'.
    """

    ITEM_DONE = 0
    EXPERIMENT_DONE = 1

    listeners = {ITEM_DONE: set(),
                 EXPERIMENT_DONE: set()}
