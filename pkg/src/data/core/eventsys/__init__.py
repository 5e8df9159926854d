"""
Package that contains everything relative to the event system.

Long running parts of the lab (training a SybilGAT model, running an
experiment) report their progress by launching events instead of logging or
drawing progress bars themselves. Whoever is interested subscribes a Listener.

There are two types of events:
- TrainEvents: launched by the SybilGAT training loop after every epoch
  (EPOCH) and when training ends (STOPPED);
- RunEvents: launched by the experiment harness when a work item finishes
  (ITEM_DONE) and when the whole experiment is done (EXPERIMENT_DONE).
Many Listeners listen to one event of a certain type and get notified by the
event source when the event is launched. Every listener contains an
EventHandler, a callback to the function that it needs to execute.
There is one type of Listener per event type:
- Listener: base class for all Listeners. It should never be used;
- TrainEventListener: listens to TrainEvents;
- RunEventListener: listens to RunEvents.
Each event has a specific id referred to as 'type_id' in code. Each id can be
found inside the Listener corresponding to that event type, for example the id
for the EPOCH event is found inside 'TrainEventListener.EPOCH'.

Each class in the package can be accessed without passing the name of the
module containing it: for example, to access the EventHandler class, you can
write 'core.eventsys.EventHandler'.
"""
# Expose classes in modules for easier access
from core.eventsys.handling import EventHandler
from core.eventsys.handling import EventData
from core.eventsys.listeners import Listener
from core.eventsys.listeners import TrainEventListener
from core.eventsys.listeners import RunEventListener

# Import modules
import core.eventsys.source
