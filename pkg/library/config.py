# khavinson-constants - sharp gradient constants for hyperbolic harmonic functions on the unit ball
#
# Copyright (C) 2026  khavinson-constants contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

import os

import yaml

from library import log
from library.errors import ConfigError
from library.log import logger

# Repository root: config files are found from here, not from the current directory
PATH = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

OUTPUT_DIR_ENV = "KHAVINSON_OUTPUT_DIR"

EVALUATION_PATHS = ("AUTO", "CLOSED_FORM", "DISC", "SPHERE", "MC")


def load_yaml(configfile):
    with open(configfile, "rt", encoding='utf8') as stream:
        yamlconfig = yaml.safe_load(stream)
        return yamlconfig if yamlconfig is not None else {}


def copy_default(default, data):
    """recursively supply default values into a dict of dicts of dicts ...."""
    for k, v in default.items():
        if k not in data or data[k] is None:
            data[k] = v
        if isinstance(v, dict):
            copy_default(default[k], data[k])


def load_config(configfile=None):
    global CONFIG_DATA
    configfile = configfile or os.path.join(PATH, "config.yaml")
    try:
        data = load_yaml(configfile)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError("Configuration file %s not found or contains errors: %s" % (configfile, e))
    copy_default(load_yaml(os.path.join(PATH, "res", "defaults.yaml")), data)
    check_config(data)
    CONFIG_DATA = data
    log.set_level(CONFIG_DATA['config']['LOG_LEVEL'])
    return CONFIG_DATA


def check_config(data):
    if data['config']['PATH'] not in EVALUATION_PATHS:
        raise ConfigError("Unsupported PATH value '%s' in config.yaml, use one of %s"
                          % (data['config']['PATH'], ", ".join(EVALUATION_PATHS)))
    if int(data['config']['WORKERS']) < 1:
        raise ConfigError("WORKERS must be >= 1")
    if int(data['monte_carlo']['SHARDS']) < 1:
        raise ConfigError("monte_carlo SHARDS must be >= 1")
    if data['output']['FORMAT'] not in ("json", "csv"):
        raise ConfigError("output FORMAT must be json or csv")


def load_profile(name=None):
    global PROFILE_DATA
    name = name or CONFIG_DATA['config']['PROFILE']
    profile_path = os.path.join(PATH, "res", "profiles", name, "profile.yaml")
    logger.debug("Loading profile %s from %s" % (name, profile_path))
    try:
        data = load_yaml(profile_path)
    except (OSError, yaml.YAMLError):
        raise ConfigError("Profile '%s' not found or contains errors" % name)
    copy_default(load_yaml(os.path.join(PATH, "res", "profiles", "default.yaml")), data)
    data['NAME'] = name
    PROFILE_DATA = data
    return PROFILE_DATA


def output_directory() -> str:
    return os.environ.get(OUTPUT_DIR_ENV) or CONFIG_DATA['output']['DIRECTORY']


CONFIG_DATA = None
PROFILE_DATA = None

# Load configuration on import
load_config()
