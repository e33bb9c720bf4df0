import os
import sys
import importlib
import logging
log = logging.getLogger(__name__)

from core.events import events

class Modules(object):
    """
    Loads and manages the plugins of the modules package.
    """
    def __init__(self, package='modules'):
        self.pending_modules = {}
        self.modules = {}
        self.package = package
        self.module_dir = os.path.join(os.path.dirname(os.path.dirname(
            os.path.abspath(__file__))), package)

    def loaded(self, module):
        """
        Check to see if a plugin is already loaded.
        """
        return module in self.modules

    def available(self):
        """
        Plugin names found in the modules directory, sorted.
        """
        names = []
        for entry in os.listdir(self.module_dir):
            path = os.path.join(self.module_dir, entry)

            if entry.endswith('.py'):
                entry = entry[:-3]
            elif not os.path.isdir(path):
                continue

            if entry.startswith(('_', '.')):
                continue

            names.append(entry)
        return sorted(names)

    def load_all(self):
        """
        Load every plugin in the modules directory. Plugins whose dependencies
        never load stay pending and are reported.
        """
        for module_name in self.available():
            if not self.loaded(module_name):
                self.load_module(module_name)

        if self.pending_modules:
            log.warning('plugins with unmet dependencies: %s' %
                        ', '.join(sorted(self.pending_modules)))

    def unload_all(self):
        """
        Unload all plugins.
        """
        for module_name in list(self.modules):
            self.unload_module(module_name)

    def load_module(self, module_name):
        """
        Import modules.<name> and instantiate the class of the same name.
        """
        if module_name in self.modules:
            self.unload_module(module_name)

        module = importlib.import_module('%s.%s' % (self.package, module_name))
        log.debug('loading plugin %s' % module_name)

        self.pending_modules[module_name] = getattr(module, module_name.split('.')[-1])()
        events.register_once('module_loaded_%s' % module_name, self.module_loaded)
        self.pending_modules[module_name].init_module()

    def unload_module(self, module_name):
        """
        Unload a plugin.

        Events raised:
            * module_unloaded_<name> <name> - the plugin has been unloaded.
        """
        if module_name not in self.modules:
            return

        self.modules[module_name].module_unload()
        sys.modules.pop('%s.%s' % (self.package, module_name), None)
        del self.modules[module_name]
        events.trigger('module_unloaded_%s' % module_name, module_name)

    def module_loaded(self, module_name):
        if module_name not in self.pending_modules:
            return

        self.modules[module_name] = self.pending_modules.pop(module_name)
        log.debug('plugin %s ready' % module_name)

modules = Modules()
