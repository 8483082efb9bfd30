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

from .adversary import CRASH_STRATEGIES
from .adversary import OMISSION_STRATEGIES
from .adversary import DeliveryDecision
from .adversary import NullAdversary
from .adversary import ScriptedAdversary
from .adversary import View
from .adversary import crash_adversary
from .adversary import make_adversary
from .adversary import omission_adversary
from .engine import WORD_BITS
from .engine import RoundEngine
from .trace import Trace
from .trace import read_trace
from .topology import Inbox
from .topology import Topology
from .topology import outbox
