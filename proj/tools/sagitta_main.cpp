#include <cstdio>

int main() {
  std::puts("sagitta CLI placeholder");
  return 0;
}
