// Allocator debug dump (hardware addresses, not people).
function dumpSlab(slab) {
  const memoryAddress = slab.base;
  console.log(memoryAddress);
}
