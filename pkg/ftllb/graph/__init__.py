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

from .graph import Graph

from .core import CoreSubgraphResult
from .core import core_subgraph
from .core import core_size_bound
from .core import core_precondition
from .io import read_graph
from .io import write_graph
from .random import regular_graph
from .random import sample_gnp
from .sets import boundary_edges
from .sets import check_edge_density
from .sets import edge_density_bound
from .sets import internal_edges
from .sets import volume
from .spectral import SpectralReport
from .spectral import cheeger_bounds
from .spectral import ideal_lambda2_bound
from .spectral import lambda2
from .spectral import lambda2_regularized
from .spectral import regularize
from .wellconnected import WellConnectedParams
from .wellconnected import check_well_connected
from .wellconnected import gnp_params
from .wellconnected import observed_params
from .wellconnected import well_connected_params
