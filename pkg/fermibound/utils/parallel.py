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
"""This module contains utilities for parallel processing."""
import dask


def compute_list_delayed(list_delayed, max_concurrent_tasks=None, num_workers=None):
    """Compute the list of Dask delayed objects in blocks of max_concurrent_tasks.

    Parameters
    ----------
    list_delayed : list
        List of Dask delayed objects.
    max_concurrent_tasks : int, optional
        Maximum number of concurrent tasks to execute.
    num_workers : int, optional
        Number of threads of the Dask threaded scheduler.

    Returns
    -------
    list
        List of computed results, in the order of ``list_delayed``.

    """
    if len(list_delayed) == 0:
        return []
    if max_concurrent_tasks is None:
        return list(dask.compute(*list_delayed, scheduler="threads", num_workers=num_workers))

    max_concurrent_tasks = min(len(list_delayed), max_concurrent_tasks)
    computed_results = []
    for i in range(0, len(list_delayed), max_concurrent_tasks):
        subset_delayed = list_delayed[i : (i + max_concurrent_tasks)]
        computed_results.extend(dask.compute(*subset_delayed, scheduler="threads", num_workers=num_workers))
    return computed_results


def compute_ordered(func, list_args, threads=1, max_concurrent_tasks=None):
    """Apply ``func`` to each argument tuple and return the results in input order.

    With ``threads == 1`` the calls run sequentially in the current thread.
    Otherwise they are scheduled as Dask delayed tasks on the threaded scheduler.

    Parameters
    ----------
    func : callable
        Function to apply.
    list_args : list of tuple
        Positional arguments of each call.
    threads : int
        Number of worker threads. The default is 1.
    max_concurrent_tasks : int, optional
        Maximum number of tasks submitted at once.

    Returns
    -------
    list
        Results ordered as ``list_args``.

    """
    if threads is None or threads <= 1:
        return [func(*args) for args in list_args]
    list_delayed = [dask.delayed(func)(*args) for args in list_args]
    return compute_list_delayed(list_delayed, max_concurrent_tasks=max_concurrent_tasks, num_workers=threads)
