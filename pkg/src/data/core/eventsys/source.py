"""Module that contains the function for launching events."""
import copy


def launch(key, listener, data=None):
    """
    Launch an event of type 'key' that the 'listener' class is listening
    to and pass the EventData 'data' to every registered Listener.
    """
    # Copy: a callback may stop listening while being notified
    listeners = copy.copy(listener.listeners[key])
    for l in listeners:
        l.notify(data)
