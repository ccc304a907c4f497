#include <cstdio>

int main() {
  std::printf("blcap cli placeholder\n");
  return 0;
}
