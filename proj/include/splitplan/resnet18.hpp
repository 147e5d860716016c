#pragma once

#include "splitplan/profile.hpp"

namespace splitplan {

// Bundled block-level profile of ResNet-18 at 3x224x224 input.
//
// Granularity is residual-block level so a cut never bisects a skip
// connection: layer 1 is the stem (7x7/2 conv + 3x3/2 maxpool), layers 2-9
// are the eight basic blocks, layer 10 is the classifier (global avgpool +
// 512x1000 fc). Forward FLOPs count conv/linear MACs x2 (BN, ReLU and
// pooling omitted); backward FLOPs use the standard 2x-forward rule;
// activation sizes are output elements x 32 bits per sample.
//
// Numbers were generated by tests/resnet18_reference.py and are frozen here.
inline LayerProfile resnet18_profile() {
  static const std::vector<double> fp = {
      236027904.0,  // stem    -> 64x56x56
      462422016.0,  // block1  -> 64x56x56
      462422016.0,  // block2  -> 64x56x56
      359661568.0,  // block3  -> 128x28x28 (stride-2 + 1x1 shortcut)
      462422016.0,  // block4  -> 128x28x28
      359661568.0,  // block5  -> 256x14x14 (stride-2 + 1x1 shortcut)
      462422016.0,  // block6  -> 256x14x14
      359661568.0,  // block7  -> 512x7x7   (stride-2 + 1x1 shortcut)
      462422016.0,  // block8  -> 512x7x7
      1024000.0,    // classifier -> 1000
  };
  static const std::vector<double> bp = {
      472055808.0, 924844032.0, 924844032.0, 719323136.0, 924844032.0,
      719323136.0, 924844032.0, 719323136.0, 924844032.0, 2048000.0,
  };
  static const std::vector<double> act_bits = {
      6422528.0, 6422528.0, 6422528.0, 3211264.0, 3211264.0,
      1605632.0, 1605632.0, 802816.0,  802816.0,  32000.0,
  };
  return build_profile(fp, bp, act_bits);
}

}  // namespace splitplan
