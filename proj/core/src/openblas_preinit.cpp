// OpenBLAS 0.3.20 picks its Cooperlake kernels on CPUs with avx512_bf16, and
// those return non-orthogonal eigenvectors from dsyevd/dsyevr/dsyev for n >~ 500.
// OpenBLAS reads OPENBLAS_CORETYPE in its own constructor, before main. Setting the
// variable from .preinit_array does not survive libc start-up, so the hook re-execs
// the binary once with the variable appended to its environment. An explicit
// OPENBLAS_CORETYPE is always respected, and failure to re-exec is non-fatal
// because the eigensolver verifies its output.
#include <unistd.h>

#include <cstring>
#include <vector>

namespace {

void select_openblas_core(int, char** argv, char** envp) {
#if defined(__x86_64__) && defined(__GNUC__) && defined(__linux__)
  std::size_t count = 0;
  for (; envp != nullptr && envp[count] != nullptr; ++count) {
    if (std::strncmp(envp[count], "OPENBLAS_CORETYPE=", 18) == 0) return;
  }
  __builtin_cpu_init();
  if (!__builtin_cpu_supports("avx512f")) return;
  static char entry[] = "OPENBLAS_CORETYPE=SkylakeX";
  std::vector<char*> env(envp, envp + count);
  env.push_back(entry);
  env.push_back(nullptr);
  ::execve("/proc/self/exe", argv, env.data());
#else
  (void)argv;
  (void)envp;
#endif
}

}  // namespace

extern "C" {
__attribute__((section(".preinit_array"), used)) void (*noonsim_openblas_preinit)(int, char**,
                                                                                   char**) =
    &select_openblas_core;
// Referenced from the eigensolver so static links always pull this object in.
int noonsim_openblas_preinit_anchor = 0;
}
