# Licensed to the Apache Software Foundation (ASF) under one
# or more contributor license agreements. See the NOTICE file
# distributed with this work for additional information
# regarding copyright ownership. The ASF licenses this file
# to you under the Apache License, Version 2.0 (the
# "License"); you may not use this file except in compliance
# with the License. You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an
# "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, either express or implied. See the License for the
# specific language governing permissions and limitations
# under the License.


class Error(Exception):
  pass


class DegenerateGraph(Error):
  pass


class NoConvergence(Error):
  def __init__(self, message, residual=None, iterations=None):
    super().__init__(message)
    self.residual = residual
    self.iterations = iterations


class BudgetExceeded(Error):
  pass


class InvalidRatio(Error):
  pass


class InvalidDensity(Error):
  pass


class TraceMismatch(Error):
  pass


class MalformedTrace(Error):
  def __init__(self, message, line=None):
    if line is not None:
      message = 'line {}: {}'.format(line, message)
    super().__init__(message)
    self.line = line


class ConfigError(Error):
  pass
