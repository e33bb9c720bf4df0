import os
import traceback
import logging
log = logging.getLogger(__name__)

class Events(object):
    """
    Registry of named events. Plugins register handlers for the commands they
    serve; the runner triggers them and collects the first result.
    """
    def __init__(self):
        self.events = {}
        self.self_destruct = {}

    def register(self, event, function):
        """
        Register a handler after the ones already there.
        """
        handlers = self.events.setdefault(event, [])

        log.debug("registering '%s' in %s" % (event, self.do_trace()))

        if function not in handlers:
            handlers.append(function)

    def register_once(self, event, function):
        """
        Register a handler that is removed after its first call.
        """
        self.register(event, function)
        self.self_destruct.setdefault(event, []).append(function)

    def unregister(self, event, function):
        """
        Remove a handler from an event.
        """
        if event not in self.events:
            return

        if function in self.events[event]:
            self.events[event].remove(function)

        if not self.events[event]:
            del self.events[event]

    def unregister_all(self):
        """
        Reset the registry.
        """
        self.events = {}
        self.self_destruct = {}

    def registered(self, event):
        """
        True if the event has at least one handler.
        """
        return bool(self.events.get(event))

    def trigger(self, event, *args, **kwargs):
        """
        Call the handlers of an event in order, stopping at the first one that
        returns a truthy value. That value is returned; None if no handler
        answered.
        """
        log.debug("raising '%s' in %s" % (event, self.do_trace()))

        ret = None
        if event not in self.events:
            return ret

        once = self.self_destruct.get(event, [])
        fired = []

        for function in list(self.events[event]):
            if function in once:
                fired.append(function)

            ret = function(*args, **kwargs)
            if ret:
                break

        for function in fired:
            self.unregister(event, function)
            once.remove(function)

        if event in self.self_destruct and not once:
            del self.self_destruct[event]

        return ret

    def do_trace(self):
        """
        Location of the caller that raised or registered an event.
        """
        # Only worth the stack walk at debug level.
        if not log.isEnabledFor(logging.DEBUG):
            return ''

        for frame in reversed(traceback.extract_stack()):
            if os.path.basename(frame.filename) in ('events.py', 'Module.py'):
                continue
            return '%s:%d:%s' % (frame.filename, frame.lineno, frame.name)
        return ''

# Global event registry.
events = Events()
