# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 itsalab developers
#
# This file is part of itsalab.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""Define the register of bundled run configurations."""
import logging
import os

from itsalab.settings.config_io import read_run_config, write_run_config
from itsalab.utils.yaml import list_yaml_files

logger = logging.getLogger(__name__)


class PresetRegistry:
    """
    A singleton class to manage named run configurations.

    Attributes
    ----------
    _instance : PresetRegistry
        The singleton instance of the `PresetRegistry`.
    registry : dict
        The registered preset names and their configuration file paths.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance.registry = {}
        return cls._instance

    @classmethod
    def get_instance(cls):
        if cls._instance is None:
            cls()
        return cls._instance

    def reset(self):
        """Clears the entire preset registry."""
        self.registry.clear()

    @property
    def names(self):
        """List the names of all registered presets."""
        return sorted(self.registry)

    def __contains__(self, item):
        return item in self.registry

    def register(self, filepath: str, verbose: bool = True, force: bool = True):
        """
        Register a preset by its file path.

        The name of the preset is the name of the file without extension.
        The content of the file is not validated.

        Parameters
        ----------
        filepath : str
            Path of the JSON or YAML configuration file.
        verbose : bool, optional
            If `True`, log a warning when overwriting an existing preset. The default is `True`.
        force : bool, optional
            If `True`, an existing preset can be overwritten. If `False`, an error is raised.
        """
        if not os.path.isfile(filepath):
            raise ValueError(f"The preset configuration file {filepath} does not exist.")
        name = os.path.splitext(os.path.basename(filepath))[0]
        if name in self.registry:
            if not force:
                raise ValueError(f"A preset named '{name}' already exists. To allow overwriting, set 'force=True'.")
            if verbose:
                logger.warning(f"Overwriting existing preset '{name}'")
        self.registry[name] = filepath

    def unregister(self, name: str):
        """Remove a preset from the registry."""
        if name not in self.registry:
            raise ValueError(f"The preset {name} is not registered in itsalab.")
        self.registry.pop(name)

    def get_filepath(self, name: str):
        """Retrieve the configuration file path of a registered preset."""
        if name not in self.registry:
            raise ValueError(f"The {name} preset is not registered in itsalab. Available presets: {self.names}.")
        return self.registry[name]

    def get_config(self, name: str):
        """Retrieve the validated RunConfig of a registered preset."""
        return read_run_config(self.get_filepath(name))

    def validate(self, name: str = None):
        """
        Validate the registered presets. If a name is provided, only that preset is validated.

        Raises
        ------
        ValueError
            If any of the validated presets has an invalid configuration.
        """
        if isinstance(name, str):
            if name not in self.registry:
                raise ValueError(f"{name} is not a registered preset.")
            names = [name]
        else:
            names = self.names
        wrong_names = []
        for name in names:
            try:
                _ = self.get_config(name)
            except Exception as e:
                wrong_names.append(name)
                logger.error(f"{name} has an invalid configuration: {e}")
        if wrong_names:
            raise ValueError(f"The {wrong_names} presets have invalid configurations.")

    def to_file(self, name, filepath, force=False):
        """Write the validated configuration of a preset to a JSON or YAML file."""
        write_run_config(self.get_config(name), filepath=filepath, force=force)


def register_presets(directory: str, verbose: bool = True, force: bool = True):
    """Register all YAML presets present in a directory."""
    presets = PresetRegistry.get_instance()
    for filepath in list_yaml_files(directory):
        presets.register(filepath, verbose=verbose, force=force)


def get_preset(name: str):
    """Return the validated RunConfig of a registered preset."""
    return PresetRegistry.get_instance().get_config(name)


def available_presets():
    """Return the names of the registered presets."""
    return PresetRegistry.get_instance().names
