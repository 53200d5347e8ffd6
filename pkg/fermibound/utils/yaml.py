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
"""This module defines the YAML (and JSON) file reader and writer used for configurations and inputs."""
import yaml


class NoAliasDumper(yaml.SafeDumper):
    """YAML Safe Dumper class avoiding use of aliases."""

    def ignore_aliases(self, data):  # noqa ARG002
        """Ignore aliases."""
        return True


def read_yaml(filepath: str) -> dict:
    """Read a YAML or JSON file into a dictionary.

    JSON documents are valid YAML, so the same safe loader handles both.

    Parameters
    ----------
    filepath : str
        Input file path.

    Returns
    -------
    dict
        Dictionary with the content of the file.

    """
    with open(filepath) as f:
        return yaml.safe_load(f)


def write_yaml(dictionary, filepath, sort_keys=False):
    """Write a dictionary into a YAML file.

    Parameters
    ----------
    dictionary : dict
        Dictionary to write into a YAML file.
    filepath : str
        Output file path.
    sort_keys : bool
        Whether to sort the dictionary keys. The default is ``False``.

    """
    with open(filepath, "w") as f:
        yaml.dump(dictionary, f, sort_keys=sort_keys, Dumper=NoAliasDumper)


def _collect_node_lines(node, prefix, lines):
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key = f"{prefix}.{key_node.value}" if prefix else str(key_node.value)
            lines[key] = key_node.start_mark.line + 1
            _collect_node_lines(value_node, key, lines)
    elif isinstance(node, yaml.SequenceNode):
        for i, item_node in enumerate(node.value):
            key = f"{prefix}[{i}]"
            lines[key] = item_node.start_mark.line + 1
            _collect_node_lines(item_node, key, lines)


def read_yaml_key_lines(filepath: str) -> dict:
    """Map every field path of a YAML or JSON file to its 1-based line number.

    Field paths use dots for mapping keys and ``[i]`` for sequence items,
    e.g. ``graph.edges[3]``.

    Parameters
    ----------
    filepath : str
        Input file path.

    Returns
    -------
    dict
        Dictionary mapping field paths to line numbers.

    """
    with open(filepath) as f:
        node = yaml.compose(f)
    lines = {}
    if node is not None:
        _collect_node_lines(node, "", lines)
    return lines
