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

from .bounds import LLBBounds
from .bounds import llb_bounds
from .config import LLBConfig
from .config import derive_config
from .config import shrink_factor
from .phases import Balancing
from .phases import FixOutliers
from .run import ACTIVE
from .run import SILENT
from .run import LLBResult
from .run import NodeOutcome
from .run import fault_tolerant_llb
from .run import fix_outliers
from .run import outcomes
from .update import llb_step
from .update import llb_update
from .update import median
