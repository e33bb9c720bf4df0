import logging
log = logging.getLogger(__name__)

from core.events import events
from core.module_driver import modules

class Module(object):
    """
    Base plugin class. A plugin serves one or more commands by registering
    `command_<name>` handlers in module_load; the handler receives the parsed
    command-line namespace and returns the result to serialise.
    """
    # Names of plugins whose commands or kernels this one relies on.
    dependencies = []

    def __init__(self):
        self.events = events
        self.modules = modules

        self.unsatisfied_depends = []
        self.check_depends()

    def check_depends(self):
        """
        Collect dependencies that are not loaded yet and wait for them.

        Events registered:
            * module_loaded_<name> <name> - completion of a dependency.
        """
        if self.unsatisfied_depends:
            return

        for dependency in self.dependencies:
            if self.module_loaded(dependency):
                continue

            self.register_once('module_loaded_%s' % dependency, self.dependency_loaded)
            self.unsatisfied_depends.append(dependency)

    def dependency_loaded(self, dependency):
        """
        Called once per loaded dependency; initialises the plugin when the
        last one arrives.
        """
        if dependency not in self.unsatisfied_depends:
            return

        self.unsatisfied_depends.remove(dependency)
        self.init_module()

    def init_module(self):
        """
        Run module_load unless dependencies are still missing.

        Events raised:
            * module_loaded_<name> <name> - the plugin finished loading.
        """
        if self.unsatisfied_depends:
            log.debug('%s waiting on %s' % (self.name, ', '.join(self.unsatisfied_depends)))
            return

        self.module_load()
        self.trigger('module_loaded_%s' % self.name, self.name)

    @property
    def name(self):
        return self.__class__.__name__

    def module_loaded(self, module):
        return self.modules.loaded(module)

    def module_load(self):
        """
        Plugin set-up; register command handlers here.
        """
        pass

    def module_unload(self):
        """
        Plugin tear-down; unregister command handlers here.
        """
        pass

    def serve(self, command, function):
        """
        Register the handler of a command.
        """
        self.register('command_%s' % command, function)

    def withdraw(self, command, function):
        """
        Unregister the handler of a command.
        """
        self.unregister('command_%s' % command, function)

    def register(self, event, function):
        self.events.register(event, function)

    def register_once(self, event, function):
        self.events.register_once(event, function)

    def unregister(self, event, function):
        self.events.unregister(event, function)

    def trigger(self, event, *args, **kwargs):
        return self.events.trigger(event, *args, **kwargs)
