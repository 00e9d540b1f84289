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

# Configure logging format
import logging

logging.basicConfig(# format='%(asctime)s [%(levelname)s] %(message)s in %(pathname)s:%(lineno)d',
                    format="%(asctime)s [%(levelname)s] %(message)s",
                    handlers=[
                        # logging.FileHandler("khavinson.log", mode='w'),  # Log in textfile
                        logging.StreamHandler()  # Log in console (stderr), never in result files
                    ],
                    datefmt='%H:%M:%S')

logger = logging.getLogger('khavinson')
logger.setLevel(logging.INFO)  # Overridden by config.LOG_LEVEL once the configuration is loaded


def set_level(level_name: str):
    level = logging.getLevelName(str(level_name).upper())
    if not isinstance(level, int):
        logger.warning("Unknown log level '%s', keeping %s" % (level_name, logging.getLevelName(logger.level)))
        return
    logger.setLevel(level)
