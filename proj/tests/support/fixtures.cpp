// Copyright 2026 The thermoqbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#include "fixtures.hpp"

namespace fixtures {

thermoqbe::RunConfig fig1() { return thermoqbe::load_config(config_dir() / "fig1.cfg"); }

thermoqbe::RunConfig single(double T0)
{
    auto c = fig1();
    c.T0_kelvin = {T0};
    return c;
}

const thermoqbe::RunResult& run_300()
{
    static const thermoqbe::RunResult r = thermoqbe::run_single(single(300.0), 300.0, 2);
    return r;
}

} // namespace fixtures
