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

from .agreement import Reach
from .agreement import agreement_check
from .agreement import agreement_persistence_check
from .agreement import dissemination_reach
from .agreement import safe_iteration_check
from .agreement import suspected_bound_check
from .agreement import validity_check
from .checks import active_set_check
from .checks import core_set
from .checks import counting_check
from .checks import remainder_shrinkage_check
from .checks import remainder_sizes
from .checks import sandwich_check
from .checks import value_range_check
from .complexity import SHAPES
from .complexity import budget_check
from .complexity import planned_messages
from .complexity import shape_fit
from .processes import OracleRun
from .processes import ideal_run
from .processes import reference_run
from .processes import skewed_runs
from .runs import LLBRun
from .runs import final_active
from .runs import from_result
from .runs import from_trace
from .runs import silent_masks
from .verdict import FAILED
from .verdict import PASSED
from .verdict import PRECONDITION_UNMET
from .verdict import Verdict
from .verdict import verdict
