# Copyright 2021 The repeaterlab authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Write output files so that readers never see partial contents.
"""

import logging
import os
import sys


log = logging.getLogger(__name__)


class FileReplace:
    """Write a file by replacing it once the new contents are complete.

    :param filename: The full path and file name.
    :param mode: The mode for open(), default 'wt'.
    :param encoding: The encoding for open(), default 'utf-8' for text modes.

    Use as a context manager.  On an exception, the partial file is
    removed and any existing file is left untouched.
    """

    def __init__(self, filename, mode=None, encoding=None):
        self._filename = os.path.abspath(filename)
        self._mode = 'wt' if mode is None else mode
        if encoding is None and 'b' not in self._mode:
            encoding = 'utf-8'
        self._encoding = encoding
        name, ext = os.path.splitext(self._filename)
        # same directory, so that os.replace never crosses volumes
        self._filename_new = '%s_new_%d%s' % (name, os.getpid(), ext)
        self._f = None

    @property
    def filename(self):
        return self._filename

    def open(self):
        if self._f is not None:
            self.close()
        newline = None if 'b' in self._mode else '\n'
        self._f = open(self._filename_new, mode=self._mode, encoding=self._encoding,
                       newline=newline)
        return self._f

    def close(self):
        try:
            if self._f:
                self._f.close()
                self._f = None
                os.replace(self._filename_new, self._filename)
                log.debug('wrote %s', self._filename)
        finally:
            self._cleanup()

    def abort(self):
        if self._f:
            self._f.close()
            self._f = None
        self._cleanup()

    def _cleanup(self):
        if os.path.isfile(self._filename_new):
            os.unlink(self._filename_new)

    def __enter__(self):
        return self.open()

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is not None:
            self.abort()
        else:
            self.close()


def write_text(path, text):
    """Write text to path, or to stdout when path is None or '-'."""
    if path is None or path == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with FileReplace(path, mode='wt') as f:
        f.write(text)
