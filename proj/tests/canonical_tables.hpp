// Copyright 2026 The shadowfit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Canonical stats CSV exports of the two embedded surveys, typed in from the
// source tables independently of the library registry.

#ifndef SHADOWFIT_TESTS_CANONICAL_TABLES_HPP
#define SHADOWFIT_TESTS_CANONICAL_TABLES_HPP

#include <cstdint>
#include <string_view>

namespace canonical {

inline constexpr std::string_view kLongwallCsv = R"csv(distance_m,mean_dbm,sd_db,prr_pct,n
1,-51.65,0.48936,100,20
2,-57.65,2.00722,100,20
3,-71.5,4.54799,96.59,20
4,-69.8,3.67924,96.76,20
5,-73.95,5.78996,96.29,20
6,-76.1,4.93004,95.83,20
7,-76.85,5.83343,95.7,20
8,-78.45,6.88665,95.07,20
9,-80.25,6.04261,95.08,20
10,-76.55,6.60522,95.45,20
11,-76.8,5.94491,95.65,20
12,-81.15,4.56828,93.92,20
13,-80.95,3.64872,93.89,20
14,-81.85,4.22119,93.9,20
15,-79.35,3.54334,94.2,20
16,-80.95,4.20443,93.77,20
17,-82.6,4.87097,92.71,20
18,-81.6,3.93901,93.85,20
19,-84.15,4.51051,90.05,20
20,-86.85,4.88041,86.2,20
)csv";

inline constexpr std::string_view kGateroadCsv = R"csv(distance_m,mean_dbm,sd_db,prr_pct,n
1,-54.2857,3.48056,99.37,20
2,-60.0952,1.92106,99.3,20
3,-68.5714,7.59402,95.73,20
4,-67.0476,7.89087,95.22,20
5,-67,7.75887,96.19,20
6,-73,4.12311,96.04,20
7,-73.6667,6.5904,95.98,20
8,-70.6191,5.45414,96.53,20
9,-73.1905,6.14261,95.9,20
10,-68.2381,5.76052,96.3,20
11,-66.1905,4.44491,97.24,20
12,-69.5714,3.35517,96.83,20
13,-69,3.6606,96.89,20
14,-75,5.12119,95.5,20
15,-75.3333,4.23478,95.81,20
16,-79.8095,4.7394,94,20
17,-75.5714,3.99464,95.14,20
18,-76.5714,5.59081,94.63,20
19,-74.5455,5.41363,94.99,20
20,-83,5.54076,92.8,20
)csv";

inline constexpr std::uint64_t kLongwallFnv = 0x11ec9e427c18d65eULL;
inline constexpr std::uint64_t kGateroadFnv = 0xf6af9052bef26094ULL;

} // namespace canonical

#endif // SHADOWFIT_TESTS_CANONICAL_TABLES_HPP
