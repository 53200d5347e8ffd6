# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 fermi-bound developers
#
# This file is part of fermi-bound.

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
"""This module contains decorators which log the execution time of functions."""
import datetime
import functools
import logging
from time import perf_counter

logger = logging.getLogger(__name__)


def log_elapsed_time(prefix=" - ", level=logging.INFO):
    """Log the elapsed time of the decorated function.

    Parameters
    ----------
    prefix : str
        Prefix of the logged message.
    level : int
        Logging level of the message. The default is ``logging.INFO``.

    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start_time = perf_counter()
            results = func(*args, **kwargs)
            execution_time = perf_counter() - start_time
            timedelta_str = str(datetime.timedelta(seconds=execution_time))
            logger.log(level, "%s %s elapsed time: %s .", prefix, func.__name__, timedelta_str)
            return results

        return wrapper

    return decorator
