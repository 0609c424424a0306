// Copyright 2026 The Confset Authors.
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

#ifndef CONFSET_NORMAL_H_
#define CONFSET_NORMAL_H_

namespace confset {

// Standard normal CDF, evaluated through std::erfc. Absolute error is at
// the level of double rounding (well below 1e-12) on the whole real line.
double NormalCdf(double x);

// Inverse of NormalCdf on (0, 1). Acklam's rational approximation followed
// by one Halley step against NormalCdf; absolute error below 1e-9 (in
// practice ~1e-15). Returns -inf/+inf at 0/1 and throws InputError outside
// [0, 1].
double NormalQuantile(double p);

}  // namespace confset

#endif  // CONFSET_NORMAL_H_
