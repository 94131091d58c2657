// Copyright 2026 The qeclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qeclab/errors.hpp"

namespace qeclab::tn {

using cd = std::complex<double>;

/// Dense tensor on a lattice site with bond legs (left, up, right, down) and
/// an optional physical leg. Data layout: index = (((l*U + u)*R + r)*D + d)*P + p.
struct SiteTensor {
    int l = 1, u = 1, r = 1, d = 1, p = 1;

    std::vector<cd> data;

    void resize() { data.assign(size_t(l) * u * r * d * p, cd(0.0)); }
    size_t index(int il, int iu, int ir, int id, int ip = 0) const {
        return ((((size_t(il) * u + iu) * r + ir) * d + id) * p + ip);
    }
    cd& at(int il, int iu, int ir, int id, int ip = 0) { return data[index(il, iu, ir, id, ip)]; }
    const cd& at(int il, int iu, int ir, int id, int ip = 0) const {
        return data[index(il, iu, ir, id, ip)];
    }
};

/// Square-lattice tensor network; sites row-major. Bond dimensions of
/// adjacent sites always match. Physical legs are open indices (dim 1 means
/// closed); a scalar network has every physical leg closed.
struct PepsNetwork {
    int rows = 0, cols = 0;
    std::vector<SiteTensor> sites;

    SiteTensor& site(int r, int c) { return sites[size_t(r) * cols + c]; }
    const SiteTensor& site(int r, int c) const { return sites[size_t(r) * cols + c]; }

    bool scalar_valued() const;
    void validate_bonds() const;

    /// Debug dump: index metadata + dense data, little-endian 64-bit floats.
    /// Not a stability-guaranteed format.
    void dump_binary(std::ostream& os) const;
};

}  // namespace qeclab::tn
