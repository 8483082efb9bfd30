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

from .config import ConsensusConfig
from .config import SKIP_SCOPES
from .config import SetGraphConfig
from .config import consensus_config
from .config import decide_threshold
from .config import degree_window
from .config import set_graph_config
from .consensus import Boundary
from .consensus import ConsensusResult
from .consensus import IterationRecord
from .consensus import consensus_crash
from .consensus import consensus_omission
from .consensus import inquire
from .consensus import run_consensus
from .counting import CountingResult
from .counting import ae_counting
from .counting import counting_config
from .set_graph import SetGraphResult
from .set_graph import set_graph
