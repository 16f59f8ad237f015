#include "etw/kernel/machine.hpp"

namespace etw::trees {
const kernel::Builtin* tree_sigma_stage_builtin();
}

namespace etw::domains {
const kernel::Builtin* domain_sigma_stage_builtin();
}

namespace etw::kernel {

const Builtin* find_builtin(std::uint64_t id) {
  switch (static_cast<BuiltinId>(id)) {
    case BuiltinId::TreeSigmaStage: return trees::tree_sigma_stage_builtin();
    case BuiltinId::DomainSigmaStage: return domains::domain_sigma_stage_builtin();
    default: return nullptr;
  }
}

}  // namespace etw::kernel
