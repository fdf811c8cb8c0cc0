// features/deltas.h

// Copyright 2026  Phonelearn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONELEARN_FEATURES_DELTAS_H_
#define PHONELEARN_FEATURES_DELTAS_H_

#include "features/feature_seq.h"

namespace phonelearn {

// Appends first and second time derivatives (regression window +-2 with edge
// replication), tripling the feature dimension: [static, delta, delta-delta].
FeatureSequence AddDeltas(const FeatureSequence& seq);

}  // namespace phonelearn

#endif  // PHONELEARN_FEATURES_DELTAS_H_
