# Copyright (c) 2026, The swarmbench Authors
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

import os
import sys

from . import cli_path


def main():
    path = cli_path()
    if path is None:
        sys.exit("swarmbench: command-line tool is not installed")
    os.execv(path, [path] + sys.argv[1:])


if __name__ == "__main__":
    main()
